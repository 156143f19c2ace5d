//! Supercharacter tables: the nonnesting theory of any pattern group and the
//! algebra-group theory of UT_n, plus the brute-force character oracles used
//! to check them.
//!
//! θ is fixed as a ↦ ζ_p^{tr(a)}, with tr the absolute trace GF(q) → GF(p).

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arcs::{enumerate, weakly_inside, ArcDiagram};
use crate::cyclotomic::{CycNumber, RootSum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pattern::{Functional, GroupElement, PatternGroup, SuperclassPartition};
use crate::poset::Poset;

// ----- closed formulas -----

fn require_nonnesting(d: &ArcDiagram) -> Result<()> {
    if d.is_nonnesting() {
        Ok(())
    } else {
        Err(Error::NotNonnesting)
    }
}

fn require_same(a: &ArcDiagram, b: &ArcDiagram) -> Result<()> {
    if a.poset() != b.poset() {
        return Err(Error::PosetMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Number of pairs lying weakly inside some other arc of η.
pub fn forbidden_pair_count(eta: &ArcDiagram) -> usize {
    let p = eta.poset();
    p.strict_pairs()
        .into_iter()
        .filter(|&t| eta.arcs().iter().any(|a| weakly_inside(p, a.pair(), t)))
        .count()
}

/// χ_η(1) = q^{#pairs weakly inside an arc of η}.
pub fn supercharacter_dim(eta: &ArcDiagram) -> Result<BigUint> {
    require_nonnesting(eta)?;
    Ok(BigUint::from(eta.field().q()).pow(forbidden_pair_count(eta) as u32))
}

/// Product of θ(ab) over arcs shared by η (label a) and ν (label b), as an exponent of ζ_p.
fn shared_arc_phase(eta: &ArcDiagram, nu: &ArcDiagram) -> u32 {
    let f = eta.field();
    let p = f.p();
    eta.arcs()
        .iter()
        .filter_map(|a| {
            nu.label_at(a.src, a.dst)
                .map(|b| f.trace(f.mul(a.label, b)))
        })
        .fold(0, |acc, t| (acc + t) % p)
}

/// The nonnesting supercharacter value as (dimension, ζ-exponent), or None when it vanishes.
fn nonnesting_value_parts(eta: &ArcDiagram, nu: &ArcDiagram) -> Option<(BigUint, u32)> {
    let p = eta.poset();
    let blocked = eta.arcs().iter().any(|a| {
        nu.arcs()
            .iter()
            .any(|b| weakly_inside(p, a.pair(), b.pair()))
    });
    if blocked {
        return None;
    }
    let dim = BigUint::from(eta.field().q()).pow(forbidden_pair_count(eta) as u32);
    Some((dim, shared_arc_phase(eta, nu)))
}

fn parts_to_cyc(p: u32, parts: Option<(BigUint, u32)>) -> CycNumber {
    match parts {
        None => CycNumber::zero(p),
        Some((m, k)) => {
            let z = CycNumber::root_of_unity(p, k as i64);
            z.scale(&BigRational::from_integer(BigInt::from(m)))
        }
    }
}

/// χ_η on the superclass K_ν of the nonnesting theory.
pub fn supercharacter_value(eta: &ArcDiagram, nu: &ArcDiagram) -> Result<CycNumber> {
    require_same(eta, nu)?;
    require_nonnesting(eta)?;
    require_nonnesting(nu)?;
    Ok(parts_to_cyc(
        eta.field().p(),
        nonnesting_value_parts(eta, nu),
    ))
}

fn require_linear(d: &ArcDiagram) -> Result<()> {
    if d.poset().is_linear() {
        Ok(())
    } else {
        Err(Error::NotLinearOrder)
    }
}

/// Algebra-group supercharacter degree q^{2Σ(j−i−1) − |C(η)|} on a linear order.
pub fn algebra_dim_linear(eta: &ArcDiagram) -> Result<BigUint> {
    require_linear(eta)?;
    let span: usize = eta.arcs().iter().map(|a| a.dst - a.src - 1).sum();
    let crossings = eta.crossing_set()?.len();
    Ok(BigUint::from(eta.field().q()).pow((2 * span - crossings) as u32))
}

/// Algebra-group supercharacter χ_η at g_ν on a linear order.
pub fn algebra_supercharacter_linear(eta: &ArcDiagram, nu: &ArcDiagram) -> Result<CycNumber> {
    require_same(eta, nu)?;
    require_linear(eta)?;
    let p = eta.field().p();
    let blocked = eta.arcs().iter().any(|a| {
        nu.arcs()
            .iter()
            .any(|b| (b.src == a.src && b.dst < a.dst) || (b.dst == a.dst && b.src > a.src))
    });
    if blocked {
        return Ok(CycNumber::zero(p));
    }
    let dim = algebra_dim_linear(eta)?;
    let nst = nu.nst(eta)?;
    let value = BigRational::new(
        BigInt::from(dim),
        BigInt::from(eta.field().q()).pow(nst as u32),
    );
    Ok(CycNumber::root_of_unity(p, shared_arc_phase(eta, nu) as i64).scale(&value))
}

// ----- class functions -----

#[derive(Clone, Debug)]
enum Values {
    /// Integral values in ℤ[ζ_p], the fast path for characters.
    Integral(Vec<RootSum>),
    Exact(Vec<CycNumber>),
}

/// A function on a pattern group, materialized over every element in enumeration order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: PatternGroup,
    values: Values,
}

impl ClassFunction {
    pub fn new(group: &PatternGroup, values: Vec<CycNumber>) -> Result<ClassFunction> {
        let order = group.checked_order()?;
        if values.len() as u64 != order {
            return Err(Error::Parse(format!(
                "expected {order} values, got {}",
                values.len()
            )));
        }
        let p = group.field().p();
        if let Some(v) = values.iter().find(|v| v.p() != p) {
            return Err(Error::PrimeMismatch(p, v.p()));
        }
        let integral: Option<Vec<RootSum>> = values.iter().map(|v| v.to_root_sum()).collect();
        Ok(ClassFunction {
            group: group.clone(),
            values: match integral {
                Some(r) => Values::Integral(r),
                None => Values::Exact(values),
            },
        })
    }

    pub(crate) fn from_root_sums(group: &PatternGroup, values: Vec<RootSum>) -> ClassFunction {
        ClassFunction {
            group: group.clone(),
            values: Values::Integral(values),
        }
    }

    pub fn zero(group: &PatternGroup) -> Result<ClassFunction> {
        let order = group.checked_order()?;
        let p = group.field().p();
        Ok(ClassFunction::from_root_sums(
            group,
            vec![RootSum::zero(p); order as usize],
        ))
    }

    pub fn constant(group: &PatternGroup, c: i128) -> Result<ClassFunction> {
        let order = group.checked_order()?;
        let p = group.field().p();
        Ok(ClassFunction::from_root_sums(
            group,
            vec![RootSum::monomial(p, c, 0); order as usize],
        ))
    }

    /// |G| at the identity, 0 elsewhere.
    pub fn regular(group: &PatternGroup) -> Result<ClassFunction> {
        let order = group.checked_order()?;
        let mut f = ClassFunction::zero(group)?;
        if let Values::Integral(v) = &mut f.values {
            v[0] = RootSum::monomial(group.field().p(), order as i128, 0);
        }
        Ok(f)
    }

    /// 1 on the listed element indices, 0 elsewhere.
    pub fn indicator(group: &PatternGroup, members: &[u64]) -> Result<ClassFunction> {
        let mut f = ClassFunction::zero(group)?;
        let p = group.field().p();
        if let Values::Integral(v) = &mut f.values {
            for &k in members {
                v[k as usize] = RootSum::monomial(p, 1, 0);
            }
        }
        Ok(f)
    }

    pub fn group(&self) -> &PatternGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Values::Integral(v) => v.len(),
            Values::Exact(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value_at(&self, index: u64) -> CycNumber {
        match &self.values {
            Values::Integral(v) => v[index as usize].to_cyc(),
            Values::Exact(v) => v[index as usize].clone(),
        }
    }

    pub fn value(&self, g: &GroupElement) -> Result<CycNumber> {
        if g.poset() != self.group.poset() {
            return Err(Error::GroupMismatch);
        }
        Ok(self.value_at(g.index()))
    }

    pub fn values(&self) -> Vec<CycNumber> {
        (0..self.len() as u64).map(|k| self.value_at(k)).collect()
    }

    fn check_group(&self, other: &ClassFunction) -> Result<()> {
        if self.group.poset() != other.group.poset() || self.group.field() != other.group.field() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// (1/|G|) Σ_g φ(g)·conj(ψ(g)).
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycNumber> {
        self.check_group(other)?;
        let p = self.group.field().p();
        let order = BigRational::from_integer(BigInt::from(self.len()));
        if let (Values::Integral(a), Values::Integral(b)) = (&self.values, &other.values) {
            let mut acc = RootSum::zero(p);
            let fits = a
                .iter()
                .zip(b)
                .try_for_each(|(x, y)| acc.add_product_conj(x, y));
            if fits.is_some() {
                return Ok(acc.to_cyc().scale(&order.recip()));
            }
        }
        let mut acc = CycNumber::zero(p);
        for k in 0..self.len() as u64 {
            acc = &acc + &(&self.value_at(k) * &other.value_at(k).conj());
        }
        Ok(acc.scale(&order.recip()))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_group(other)?;
        if let (Values::Integral(a), Values::Integral(b)) = (&self.values, &other.values) {
            let sum = a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let mut s = x.clone();
                    s.add_assign(y);
                    s
                })
                .collect();
            return Ok(ClassFunction::from_root_sums(&self.group, sum));
        }
        let sum = (0..self.len() as u64)
            .map(|k| &self.value_at(k) + &other.value_at(k))
            .collect();
        ClassFunction::new(&self.group, sum)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.add(&other.scale(&CycNumber::from_integer(self.group.field().p(), -1))?)
    }

    pub fn scale(&self, c: &CycNumber) -> Result<ClassFunction> {
        if c.p() != self.group.field().p() {
            return Err(Error::PrimeMismatch(self.group.field().p(), c.p()));
        }
        if let (Values::Integral(a), Some(r)) = (&self.values, c.to_root_sum()) {
            if let Some(v) = a.iter().map(|x| x.checked_mul(&r)).collect() {
                return Ok(ClassFunction::from_root_sums(&self.group, v));
            }
        }
        let v = (0..self.len() as u64)
            .map(|k| &self.value_at(k) * c)
            .collect();
        ClassFunction::new(&self.group, v)
    }

    /// Whether the function takes a single value on the listed elements.
    pub fn is_constant_on(&self, members: &[u64]) -> bool {
        let Some((&first, rest)) = members.split_first() else {
            return true;
        };
        match &self.values {
            Values::Integral(v) => {
                let a = v[first as usize].normalized();
                rest.iter().all(|&k| v[k as usize].normalized() == a)
            }
            Values::Exact(v) => rest.iter().all(|&k| v[k as usize] == v[first as usize]),
        }
    }

    pub(crate) fn root_sums(&self) -> Option<&[RootSum]> {
        match &self.values {
            Values::Integral(v) => Some(v),
            Values::Exact(_) => None,
        }
    }

    pub(crate) fn normalized_at(&self, index: u64) -> Option<RootSum> {
        match &self.values {
            Values::Integral(v) => Some(v[index as usize].normalized()),
            Values::Exact(_) => None,
        }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.check_group(other).is_err() || self.len() != other.len() {
            return false;
        }
        (0..self.len() as u64).all(|k| match (self.normalized_at(k), other.normalized_at(k)) {
            (Some(a), Some(b)) => a == b,
            _ => self.value_at(k) == other.value_at(k),
        })
    }
}

// ----- character oracles -----

/// Ind-Res construction: |U:U_η|·θ(λ_η(f(g))) on U_η, zero elsewhere.
pub fn ind_res_character(group: &PatternGroup, eta: &ArcDiagram) -> Result<ClassFunction> {
    require_nonnesting(eta)?;
    let order = group.checked_order()?;
    let forbidden = group.u_eta_forbidden(eta)?;
    let index = (group.field().q() as i128).pow(forbidden.len() as u32);
    let lambda = Functional::from_diagram(group, eta)?;
    let f = group.field();
    let p = f.p();
    let values = (0..order)
        .map(|k| {
            let g = group.raw_at(k);
            if forbidden.iter().any(|&t| g[t] != 0) {
                RootSum::zero(p)
            } else {
                let t = f.trace(group.pairing_raw(lambda.raw(), &g));
                RootSum::monomial(p, index, t)
            }
        })
        .collect();
    Ok(ClassFunction::from_root_sums(group, values))
}

/// Σ over the listed functionals μ of θ∘μ∘f.
pub fn functional_sum_character(
    group: &PatternGroup,
    functionals: &[Vec<u32>],
) -> Result<ClassFunction> {
    let order = group.checked_order()?;
    let f = group.field();
    let p = f.p();
    let values = (0..order)
        .map(|k| {
            let g = group.raw_at(k);
            let mut acc = RootSum::zero(p);
            for mu in functionals {
                acc.add_root(f.trace(group.pairing_raw(mu, &g)), 1);
            }
            acc
        })
        .collect();
    Ok(ClassFunction::from_root_sums(group, values))
}

/// Σ over {μ : big(μ) = η} of θ∘μ∘f, by scanning the whole dual space.
pub fn big_fiber_character(group: &PatternGroup, eta: &ArcDiagram) -> Result<ClassFunction> {
    require_nonnesting(eta)?;
    if eta.poset() != group.poset() {
        return Err(Error::PosetMismatch);
    }
    let order = group.checked_order()?;
    let fiber: Vec<Vec<u32>> = (0..order)
        .map(|k| group.raw_at(k))
        .filter(|mu| group.big_raw(mu) == eta.arcs())
        .collect();
    functional_sum_character(group, &fiber)
}

/// Algebra-group supercharacter Σ_{μ∈UλU} θ∘μ∘f.
pub fn dual_orbit_character(group: &PatternGroup, lambda: &Functional) -> Result<ClassFunction> {
    let orbit: Vec<Vec<u32>> = group
        .dual_orbit(lambda)?
        .iter()
        .map(|m| m.raw().to_vec())
        .collect();
    functional_sum_character(group, &orbit)
}

/// Algebra-group superclass f⁻¹(U x_ν U), as sorted element indices.
pub fn algebra_superclass(group: &PatternGroup, nu: &ArcDiagram) -> Result<Vec<u64>> {
    let x = crate::pattern::AlgebraElement::from_diagram(group, nu)?;
    Ok(group
        .two_sided_orbit(&x)?
        .iter()
        .map(|y| y.index())
        .collect())
}

fn require_linear_group(group: &PatternGroup) -> Result<()> {
    if group.poset().is_linear() {
        Ok(())
    } else {
        Err(Error::NotLinearOrder)
    }
}

/// χ_[η] = Σ over ν ∈ Π with big(ν) = η of the algebra-group supercharacters χ_ν.
pub fn coarsen_from_algebra(group: &PatternGroup, eta: &ArcDiagram) -> Result<ClassFunction> {
    require_linear_group(group)?;
    require_nonnesting(eta)?;
    let mut acc = ClassFunction::zero(group)?;
    for nu in enumerate(group.poset(), group.field(), false) {
        if &nu.big() == eta {
            let lam = Functional::from_diagram(group, &nu)?;
            acc = acc.add(&dual_orbit_character(group, &lam)?)?;
        }
    }
    Ok(acc)
}

/// K_[η] = union over ν ∈ Π with sml(ν) = η of the algebra-group superclasses.
pub fn coarsen_superclass(group: &PatternGroup, eta: &ArcDiagram) -> Result<Vec<u64>> {
    require_linear_group(group)?;
    require_nonnesting(eta)?;
    let mut out = Vec::new();
    for nu in enumerate(group.poset(), group.field(), false) {
        if &nu.sml() == eta {
            out.extend(algebra_superclass(group, &nu)?);
        }
    }
    out.sort_unstable();
    Ok(out)
}

// ----- tables -----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Nonnesting,
    Algebra,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Nonnesting => "nonnesting",
            Theory::Algebra => "algebra",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupercharacterTable {
    pub theory: Theory,
    pub poset: Poset,
    pub field: Field,
    /// Row and column index; the empty diagram comes first.
    pub diagrams: Vec<ArcDiagram>,
    /// values[row η][column ν] = χ_η(K_ν).
    pub values: Vec<Vec<CycNumber>>,
    pub dims: Vec<BigUint>,
    /// |K_ν| per column; unknown for algebra tables whose group exceeds the size limit.
    pub class_sizes: Option<Vec<BigUint>>,
}

impl SupercharacterTable {
    /// Nonnesting theory from the closed formulas; no group enumeration.
    pub fn nonnesting(poset: &Poset, field: &Field) -> Result<SupercharacterTable> {
        let diagrams = enumerate(poset, field, true);
        let group = PatternGroup::new(poset, field);
        let p = field.p();
        let values = diagrams
            .iter()
            .map(|eta| {
                diagrams
                    .iter()
                    .map(|nu| parts_to_cyc(p, nonnesting_value_parts(eta, nu)))
                    .collect()
            })
            .collect();
        let dims = diagrams
            .iter()
            .map(supercharacter_dim)
            .collect::<Result<_>>()?;
        let class_sizes = diagrams
            .iter()
            .map(|nu| group.superclass_size(nu))
            .collect::<Result<_>>()?;
        Ok(SupercharacterTable {
            theory: Theory::Nonnesting,
            poset: poset.clone(),
            field: field.clone(),
            diagrams,
            values,
            dims,
            class_sizes: Some(class_sizes),
        })
    }

    /// Algebra-group theory of UT_n from the closed formulas; class sizes by orbit closure when affordable.
    pub fn algebra(poset: &Poset, field: &Field, limit: u64) -> Result<SupercharacterTable> {
        if !poset.is_linear() {
            return Err(Error::NotLinearOrder);
        }
        let diagrams = enumerate(poset, field, false);
        let values = diagrams
            .iter()
            .map(|eta| {
                diagrams
                    .iter()
                    .map(|nu| algebra_supercharacter_linear(eta, nu))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let dims = diagrams
            .iter()
            .map(algebra_dim_linear)
            .collect::<Result<_>>()?;
        let group = PatternGroup::with_limit(poset, field, limit);
        let class_sizes = match group.checked_order() {
            Ok(_) => Some(
                diagrams
                    .iter()
                    .map(|nu| algebra_superclass(&group, nu).map(|c| BigUint::from(c.len())))
                    .collect::<Result<_>>()?,
            ),
            Err(_) => None,
        };
        Ok(SupercharacterTable {
            theory: Theory::Algebra,
            poset: poset.clone(),
            field: field.clone(),
            diagrams,
            values,
            dims,
            class_sizes,
        })
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn render_ascii(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.len() + 1);
        let mut header = vec!["".to_string()];
        header.extend(self.diagrams.iter().map(|d| d.to_string()));
        grid.push(header);
        for (eta, row) in self.diagrams.iter().zip(&self.values) {
            let mut line = vec![eta.to_string()];
            line.extend(row.iter().map(|v| v.to_string()));
            grid.push(line);
        }
        if let Some(sizes) = &self.class_sizes {
            let mut line = vec!["|K|".to_string()];
            line.extend(sizes.iter().map(|s| s.to_string()));
            grid.push(line);
        }
        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_latex(&self) -> String {
        let zeta = format!("\\zeta_{{{}}}", self.field.p());
        let diagram = |d: &ArcDiagram| {
            if d.is_empty() {
                "$\\emptyset$".to_string()
            } else {
                let arcs: Vec<String> = d
                    .label_triples()
                    .iter()
                    .map(|(a, b, c)| {
                        format!("{a}\\overset{{{}}}{{\\frown}}{b}", self.field.format(*c))
                    })
                    .collect();
                format!("${}$", arcs.join(",\\,"))
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(self.len()));
        let head: Vec<String> = self.diagrams.iter().map(diagram).collect();
        let _ = writeln!(out, " & {} \\\\ \\hline", head.join(" & "));
        for (eta, row) in self.diagrams.iter().zip(&self.values) {
            let cells: Vec<String> = row
                .iter()
                .map(|v| format!("${}$", v.render(&zeta)))
                .collect();
            let _ = writeln!(out, "{} & {} \\\\", diagram(eta), cells.join(" & "));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

// ----- verification -----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub(crate) fn new(name: &str, witness: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SctReport {
    pub group_order: u64,
    pub supercharacters: usize,
    pub superclasses: usize,
    pub checks: Vec<Check>,
}

impl SctReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exhaustive verification that the nonnesting superclasses and supercharacters
/// form a supercharacter theory of U_P, with the closed formulas matching the oracles.
pub fn verify_sct(group: &PatternGroup) -> Result<SctReport> {
    let order = group.checked_order()?;
    let partition = SuperclassPartition::compute(group)?;
    let diagrams = &partition.diagrams;
    let classes = group.conjugacy_classes()?;
    let mut checks = Vec::new();

    // superclasses partition the group into unions of conjugacy classes
    let mut witness = None;
    for c in &classes {
        let first = partition.class_of[c[0] as usize];
        if let Some(&k) = c.iter().find(|&&k| partition.class_of[k as usize] != first) {
            witness = Some(format!(
                "conjugate elements {:?} and {:?} lie in different superclasses",
                group.raw_at(c[0]),
                group.raw_at(k)
            ));
            break;
        }
    }
    if witness.is_none() {
        let mut members: Vec<Vec<u64>> = vec![Vec::new(); diagrams.len()];
        for (k, &c) in partition.class_of.iter().enumerate() {
            members[c as usize].push(k as u64);
        }
        for (nu, m) in diagrams.iter().zip(&members) {
            let closed: Vec<u64> = group
                .superclass_closed_form(nu)?
                .iter()
                .map(|g| g.index())
                .collect();
            if &closed != m {
                witness = Some(format!(
                    "superclass {nu} differs from its closed description"
                ));
                break;
            }
        }
    }
    checks.push(Check::new(
        "superclasses are unions of conjugacy classes",
        witness,
    ));

    // SCT1: as many supercharacters as nonempty superclasses
    let nonempty = partition.sizes.iter().filter(|&&s| s > 0).count();
    checks.push(Check::new(
        "SCT1 |X| = |K|",
        (nonempty != diagrams.len())
            .then(|| format!("{} characters, {nonempty} classes", diagrams.len())),
    ));

    // SCT2: each Ind-Res character is constant on superclasses and equals the closed formula
    let characters: Vec<ClassFunction> = diagrams
        .iter()
        .map(|eta| ind_res_character(group, eta))
        .collect::<Result<_>>()?;
    let p = group.field().p();
    let mut witness = None;
    'rows: for (eta, chi) in diagrams.iter().zip(&characters) {
        let formula: Vec<RootSum> = diagrams
            .iter()
            .map(|nu| {
                match nonnesting_value_parts(eta, nu) {
                    None => RootSum::zero(p),
                    Some((m, k)) => RootSum::monomial(p, m.to_i128().unwrap_or(i128::MAX), k),
                }
                .normalized()
            })
            .collect();
        for k in 0..order {
            let c = partition.class_of[k as usize] as usize;
            if chi.normalized_at(k).as_ref() != Some(&formula[c]) {
                witness = Some(format!(
                    "chi_{eta} at {:?} is {} but the formula gives {}",
                    group.raw_at(k),
                    chi.value_at(k),
                    formula[c].to_cyc()
                ));
                break 'rows;
            }
        }
        let u_eta = group.u_eta_subgroup(eta)?.len() as u64;
        let dim = supercharacter_dim(eta)?;
        if BigUint::from(order) != dim.clone() * BigUint::from(u_eta) {
            witness = Some(format!(
                "dim chi_{eta} = {dim} but |U:U_eta| = {}",
                order / u_eta
            ));
            break;
        }
    }
    checks.push(Check::new(
        "SCT2 constant on superclasses, formula = Ind-Res",
        witness,
    ));

    // pairwise orthogonality
    let mut witness = None;
    'outer: for (a, chi) in characters.iter().enumerate() {
        for (b, psi) in characters.iter().enumerate().skip(a) {
            let ip = chi.inner_product(psi)?;
            let ok = if a == b {
                ip.as_rational().is_some_and(|r| r.is_positive())
            } else {
                ip.is_zero()
            };
            if !ok {
                witness = Some(format!("<chi_{}, chi_{}> = {ip}", diagrams[a], diagrams[b]));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("orthogonality", witness));

    // Σ χ_η is the regular character
    let mut sum = ClassFunction::zero(group)?;
    for chi in &characters {
        sum = sum.add(chi)?;
    }
    let regular = ClassFunction::regular(group)?;
    let witness = (0..order)
        .find(|&k| sum.normalized_at(k) != regular.normalized_at(k))
        .map(|k| {
            format!(
                "sum of supercharacters at {:?} is {}",
                group.raw_at(k),
                sum.value_at(k)
            )
        });
    checks.push(Check::new(
        "sum of supercharacters is the regular character",
        witness,
    ));

    Ok(SctReport {
        group_order: order,
        supercharacters: diagrams.len(),
        superclasses: nonempty,
        checks,
    })
}

/// Exhaustive comparison of the UT_n algebra-group formulas against the dual-orbit oracle.
pub fn verify_algebra_table(group: &PatternGroup) -> Result<Vec<Check>> {
    require_linear_group(group)?;
    group.checked_order()?;
    let diagrams = enumerate(group.poset(), group.field(), false);
    let reps: Vec<u64> = diagrams
        .iter()
        .map(|nu| Ok(crate::pattern::AlgebraElement::from_diagram(group, nu)?.index()))
        .collect::<Result<_>>()?;
    let mut value_witness = None;
    let mut dim_witness = None;
    for eta in &diagrams {
        let chi = dual_orbit_character(group, &Functional::from_diagram(group, eta)?)?;
        let dim = algebra_dim_linear(eta)?;
        if chi.value_at(0) != CycNumber::from_bigint(group.field().p(), dim.clone().into())
            && dim_witness.is_none()
        {
            dim_witness = Some(format!(
                "chi_{eta}(1) = {} but the formula gives {dim}",
                chi.value_at(0)
            ));
        }
        for (nu, &k) in diagrams.iter().zip(&reps) {
            let formula = algebra_supercharacter_linear(eta, nu)?;
            if chi.value_at(k) != formula && value_witness.is_none() {
                value_witness = Some(format!(
                    "chi_{eta}(g_{nu}) = {} but the formula gives {formula}",
                    chi.value_at(k)
                ));
            }
        }
    }
    Ok(vec![
        Check::new("algebra supercharacter values", value_witness),
        Check::new("algebra supercharacter degrees", dim_witness),
    ])
}

/// Exhaustive comparison of the coarsened algebra-group theory with the nonnesting theory.
pub fn verify_coarsening(group: &PatternGroup) -> Result<Vec<Check>> {
    require_linear_group(group)?;
    let partition = SuperclassPartition::compute(group)?;
    let mut char_witness = None;
    let mut class_witness = None;
    for (c, eta) in partition.diagrams.iter().enumerate() {
        if char_witness.is_none()
            && coarsen_from_algebra(group, eta)? != ind_res_character(group, eta)?
        {
            char_witness = Some(format!("coarsened character for {eta} differs"));
        }
        let members: Vec<u64> = (0..partition.class_of.len() as u64)
            .filter(|&k| partition.class_of[k as usize] as usize == c)
            .collect();
        if class_witness.is_none() && coarsen_superclass(group, eta)? != members {
            class_witness = Some(format!("coarsened superclass for {eta} differs"));
        }
    }
    Ok(vec![
        Check::new("coarsened characters", char_witness),
        Check::new("coarsened superclasses", class_witness),
    ])
}

/// Map each nonnesting diagram to its position in the table order.
pub fn diagram_positions(diagrams: &[ArcDiagram]) -> HashMap<ArcDiagram, usize> {
    diagrams
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, d)| (d, k))
        .collect()
}
