//! Product and coproduct from the closed formulas on diagrams.

use num_bigint::BigInt;

use super::{Basis, Engine};
use crate::arcs::{enumerate, extend_arcs, weakly_inside, ArcDiagram, LabeledArc};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::poset::check_partition;

#[derive(Clone, Copy, Debug, Default)]
pub struct CombinatorialEngine;

/// η ⊔ ν as a diagram on P·Q.
fn union_on_concat(left: &ArcDiagram, right: &ArcDiagram) -> Result<ArcDiagram> {
    if left.field() != right.field() {
        return Err(Error::FieldMismatch);
    }
    if let Some(l) = left
        .poset()
        .labels()
        .iter()
        .find(|l| right.poset().contains(l))
    {
        return Err(Error::OverlappingGroundSets(l.clone()));
    }
    let ambient = left.poset().concat(right.poset())?;
    left.disjoint_union(right, &ambient)
}

/// (F, F_S, F_T): forbidden pairs of η overall, and those with both ends in S or in T.
pub(crate) fn forbidden_split_counts(eta: &ArcDiagram, s: &[String]) -> (usize, usize, usize) {
    let p = eta.poset();
    let in_s = |i: usize| s.iter().any(|l| l == p.label(i));
    let (mut all, mut fs, mut ft) = (0, 0, 0);
    for t in p.strict_pairs() {
        if eta.arcs().iter().any(|a| weakly_inside(p, a.pair(), t)) {
            all += 1;
            match (in_s(t.0), in_s(t.1)) {
                (true, true) => fs += 1,
                (false, false) => ft += 1,
                _ => {}
            }
        }
    }
    (all, fs, ft)
}

impl Engine for CombinatorialEngine {
    fn name(&self) -> &'static str {
        "combinatorial"
    }

    fn product_basis(
        &self,
        basis: Basis,
        left: &ArcDiagram,
        right: &ArcDiagram,
    ) -> Result<Vec<(ArcDiagram, CycNumber)>> {
        let union = union_on_concat(left, right)?;
        let p = union.field().p();
        match basis {
            Basis::PowerSum | Basis::Chi => Ok(vec![(union, CycNumber::one(p))]),
            Basis::Kappa => {
                // every nonnesting way of adding arcs from the left block to the right block
                let ambient = union.poset();
                let cross: Vec<(usize, usize)> = ambient
                    .strict_pairs()
                    .into_iter()
                    .filter(|&(i, j)| {
                        let (a, b) = (ambient.label(i), ambient.label(j));
                        left.poset().contains(a) && right.poset().contains(b)
                    })
                    .collect();
                Ok(
                    extend_arcs(ambient, union.field(), union.arcs(), &cross, true)
                        .into_iter()
                        .map(|arcs: Vec<LabeledArc>| {
                            let d = ArcDiagram::validate(ambient, union.field(), &arcs)
                                .expect("extensions are valid diagrams");
                            (d, CycNumber::one(p))
                        })
                        .collect(),
                )
            }
        }
    }

    fn coproduct_basis(
        &self,
        basis: Basis,
        eta: &ArcDiagram,
        s: &[String],
        t: &[String],
    ) -> Result<Vec<(ArcDiagram, ArcDiagram, CycNumber)>> {
        if !eta.is_nonnesting() {
            return Err(Error::NotNonnesting);
        }
        check_partition(eta.poset(), s, t)?;
        let poset = eta.poset();
        let field = eta.field();
        let p = field.p();
        match basis {
            Basis::PowerSum => Err(Error::Unsupported(
                "the power-sum coproduct has no closed formula here; use the functional engine"
                    .into(),
            )),
            Basis::Kappa => {
                let (ps, pt) = (poset.restrict(s)?, poset.restrict(t)?);
                let need_s = eta.restrict(s)?;
                let need_t = eta.restrict(t)?;
                if need_s.len() + need_t.len() != eta.len() {
                    // an arc of η crosses between S and T
                    return Ok(Vec::new());
                }
                let lefts: Vec<ArcDiagram> = enumerate(&ps, field, true)
                    .into_iter()
                    .filter(|nu| need_s.is_subdiagram_of(nu))
                    .collect();
                let rights: Vec<ArcDiagram> = enumerate(&pt, field, true)
                    .into_iter()
                    .filter(|rho| need_t.is_subdiagram_of(rho))
                    .collect();
                let mut out = Vec::new();
                for nu in &lefts {
                    for rho in &rights {
                        if &nu.disjoint_union(rho, poset)?.sml() == eta {
                            out.push((nu.clone(), rho.clone(), CycNumber::one(p)));
                        }
                    }
                }
                Ok(out)
            }
            Basis::Chi => {
                let (f, fs, ft) = forbidden_split_counts(eta, s);
                let power = BigInt::from(field.q()).pow((f - fs - ft) as u32);
                let c = CycNumber::from_bigint(p, power);
                let lefts = eta.proj(s)?;
                let rights = eta.proj(t)?;
                let mut out = Vec::with_capacity(lefts.len() * rights.len());
                for nu in &lefts {
                    for rho in &rights {
                        out.push((nu.clone(), rho.clone(), c.clone()));
                    }
                }
                Ok(out)
            }
        }
    }
}
