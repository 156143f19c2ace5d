//! Exhaustive checks of the Hopf monoid axioms on small ground sets.

use std::collections::HashMap;

use super::{
    comultiply_factor, coproduct, multiply_factors, product, Basis, Engine, ScfVector,
    TensorElement,
};
use crate::arcs::{enumerate, ArcDiagram};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::{sorted_labels, Poset};
use crate::supercharacters::Check;

/// Largest ground set the exhaustive checks accept.
pub const MAX_AXIOM_GROUND: usize = 4;

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub ground: Vec<String>,
    pub basis: Basis,
    pub engine: String,
    pub checks: Vec<Check>,
    /// Two elements whose products in either order differ, when one was found.
    pub noncommutative_witness: Option<String>,
    pub cases: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Every basis element of nnfp[A] for every subset A of the labels, keyed by subset mask.
fn basis_by_subset(labels: &[String], field: &Field, basis: Basis) -> Result<Vec<Vec<ScfVector>>> {
    let n = labels.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let subset = subset_of(labels, mask);
        let mut vs = Vec::new();
        for poset in Poset::all_on(&subset)? {
            for d in enumerate(&poset, field, true) {
                vs.push(ScfVector::basis_element(basis, &d)?);
            }
        }
        out.push(vs);
    }
    Ok(out)
}

fn subset_of(labels: &[String], mask: usize) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, l)| l.clone())
        .collect()
}

/// Ordered decompositions of the full mask into `k` (possibly empty) blocks.
fn decompositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut blocks = vec![0usize; k];
        let mut c = code;
        for i in 0..n {
            blocks[c % k] |= 1 << i;
            c /= k;
        }
        out.push(blocks);
    }
    out
}

struct Recorder {
    name: &'static str,
    witness: Option<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Recorder {
        Recorder {
            name,
            witness: None,
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        lhs: &T,
        rhs: &T,
        context: impl FnOnce() -> String,
    ) {
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(format!("{}: {} ≠ {}", context(), lhs, rhs));
        }
    }

    fn done(self) -> Check {
        Check::new(self.name, self.witness)
    }
}

/// Check associativity, coassociativity, compatibility, cocommutativity,
/// naturality, and the unit and counit laws on every basis element over every
/// subset of `labels`, and look for a pair witnessing noncommutativity.
pub fn check_hopf_axioms<S: AsRef<str>>(
    labels: &[S],
    field: &Field,
    basis: Basis,
    engine: &dyn Engine,
) -> Result<AxiomReport> {
    let labels = sorted_labels(labels.iter().map(|s| s.as_ref()));
    let n = labels.len();
    if n > MAX_AXIOM_GROUND {
        return Err(Error::GroundSetTooLarge {
            size: n,
            limit: MAX_AXIOM_GROUND,
        });
    }
    let elems = basis_by_subset(&labels, field, basis)?;
    let full = (1usize << n) - 1;
    let sub = |mask: usize| subset_of(&labels, mask);
    let mut cases = 0usize;
    let mut checks = Vec::new();

    let mut rec = Recorder::new("associativity");
    for blocks in decompositions(n, 3) {
        for x in &elems[blocks[0]] {
            for y in &elems[blocks[1]] {
                for z in &elems[blocks[2]] {
                    let lhs = product(engine, &product(engine, x, y)?, z)?;
                    let rhs = product(engine, x, &product(engine, y, z)?)?;
                    cases += 1;
                    rec.expect_eq(&lhs, &rhs, || format!("({x})({y})({z})"));
                }
            }
        }
    }
    checks.push(rec.done());

    let mut rec = Recorder::new("coassociativity");
    for blocks in decompositions(n, 3) {
        let (a, b, c) = (sub(blocks[0]), sub(blocks[1]), sub(blocks[2]));
        let ab: Vec<String> = a.iter().chain(&b).cloned().collect();
        let bc: Vec<String> = b.iter().chain(&c).cloned().collect();
        for x in &elems[full] {
            let lhs = comultiply_factor(engine, &coproduct(engine, x, &ab, &c)?, 0, &a, &b)?;
            let rhs = comultiply_factor(engine, &coproduct(engine, x, &a, &bc)?, 1, &b, &c)?;
            cases += 1;
            rec.expect_eq(&lhs, &rhs, || format!("Δ on {x} over {a:?}|{b:?}|{c:?}"));
        }
    }
    checks.push(rec.done());

    // Δ_{T1,T2}(xy) = (μ⊗μ)(id⊗swap⊗id)(Δ_{A,B}x ⊗ Δ_{C,D}y) with
    // A = S1∩T1, B = S1∩T2, C = S2∩T1, D = S2∩T2
    let mut rec = Recorder::new("compatibility");
    for s in decompositions(n, 2) {
        for t in decompositions(n, 2) {
            let (t1, t2) = (sub(t[0]), sub(t[1]));
            let [a, b, c, d] = [s[0] & t[0], s[0] & t[1], s[1] & t[0], s[1] & t[1]].map(sub);
            for x in &elems[s[0]] {
                for y in &elems[s[1]] {
                    let lhs = coproduct(engine, &product(engine, x, y)?, &t1, &t2)?;
                    let split =
                        coproduct(engine, x, &a, &b)?.tensor(&coproduct(engine, y, &c, &d)?)?;
                    let mixed = split.permute(&[0, 2, 1, 3]);
                    let rhs = multiply_factors(engine, &multiply_factors(engine, &mixed, 2)?, 0)?;
                    cases += 1;
                    rec.expect_eq(&lhs, &rhs, || {
                        format!("x = {x}, y = {y}, T = {t1:?}|{t2:?}")
                    });
                }
            }
        }
    }
    checks.push(rec.done());

    let mut rec = Recorder::new("cocommutativity");
    for st in decompositions(n, 2) {
        let (s, t) = (sub(st[0]), sub(st[1]));
        for x in &elems[full] {
            let lhs = coproduct(engine, x, &s, &t)?.swap();
            let rhs = coproduct(engine, x, &t, &s)?;
            cases += 1;
            rec.expect_eq(&lhs, &rhs, || format!("{x} over {s:?}|{t:?}"));
        }
    }
    checks.push(rec.done());

    let mut rec = Recorder::new("naturality");
    for image in permutations_onto_fresh(&labels) {
        let map: HashMap<String, String> =
            labels.iter().cloned().zip(image.iter().cloned()).collect();
        for st in decompositions(n, 2) {
            let (s, t) = (sub(st[0]), sub(st[1]));
            let (ms, mt) = (restrict_map(&map, &s), restrict_map(&map, &t));
            let s_img: Vec<String> = s.iter().map(|l| map[l].clone()).collect();
            let t_img: Vec<String> = t.iter().map(|l| map[l].clone()).collect();
            for x in &elems[st[0]] {
                for y in &elems[st[1]] {
                    let lhs = product(engine, x, y)?.transport(&map)?;
                    let rhs = product(engine, &x.transport(&ms)?, &y.transport(&mt)?)?;
                    cases += 1;
                    rec.expect_eq(&lhs, &rhs, || {
                        format!("product of {x} and {y} under {map:?}")
                    });
                }
            }
            for x in &elems[full] {
                let lhs = coproduct(engine, x, &s, &t)?.transport(&map)?;
                let rhs = coproduct(engine, &x.transport(&map)?, &s_img, &t_img)?;
                cases += 1;
                rec.expect_eq(&lhs, &rhs, || format!("coproduct of {x} under {map:?}"));
            }
        }
    }
    checks.push(rec.done());

    // the engine itself must agree with the canonical identifications
    let mut rec = Recorder::new("unit and counit");
    let empty = ArcDiagram::empty(&Poset::empty(), field);
    let one = CycNumber::one(field.p());
    let unit = ScfVector::unit(field, basis);
    for x in &elems[full] {
        cases += 1;
        rec.expect_eq(&product(engine, &unit, x)?, x, || format!("1·{x}"));
        rec.expect_eq(&product(engine, x, &unit)?, x, || format!("{x}·1"));
        let left = TensorElement::pure(&[unit.clone(), x.clone()])?;
        rec.expect_eq(&coproduct(engine, x, &[], &labels)?, &left, || {
            format!("Δ_(∅,I) {x}")
        });
        let right = TensorElement::pure(&[x.clone(), unit.clone()])?;
        rec.expect_eq(&coproduct(engine, x, &labels, &[])?, &right, || {
            format!("Δ_(I,∅) {x}")
        });
        if n > 0 {
            for (eta, _) in x.terms() {
                let direct = engine.product_basis(basis, eta, &empty)?;
                let ok = direct.len() == 1 && &direct[0].0 == eta && direct[0].1 == one;
                if !ok && rec.witness.is_none() {
                    rec.witness = Some(format!("engine product of {eta} with the unit"));
                }
            }
        }
    }
    checks.push(rec.done());

    let mut witness = None;
    'search: for st in decompositions(n, 2) {
        if st[0] == 0 || st[1] == 0 {
            continue;
        }
        for x in &elems[st[0]] {
            for y in &elems[st[1]] {
                if product(engine, x, y)? != product(engine, y, x)? {
                    witness = Some(format!("{x} and {y}"));
                    break 'search;
                }
            }
        }
    }

    Ok(AxiomReport {
        ground: labels,
        basis,
        engine: engine.name().to_string(),
        checks,
        noncommutative_witness: witness,
        cases,
    })
}

fn restrict_map(map: &HashMap<String, String>, subset: &[String]) -> HashMap<String, String> {
    subset.iter().map(|l| (l.clone(), map[l].clone())).collect()
}

/// Every bijection from the labels onto a primed copy of themselves.
fn permutations_onto_fresh(labels: &[String]) -> Vec<Vec<String>> {
    let fresh: Vec<String> = labels.iter().map(|l| format!("{l}'")).collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    loop {
        out.push(perm.iter().map(|&k| fresh[k].clone()).collect());
        // next lexicographic permutation
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..perm.len())
            .rev()
            .find(|&j| perm[j] > perm[i - 1])
            .expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_counts() {
        assert_eq!(decompositions(3, 2).len(), 8);
        assert_eq!(decompositions(2, 3).len(), 9);
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(permutations_onto_fresh(&labels).len(), 6);
    }
}
