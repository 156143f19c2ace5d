//! The Hopf monoid of nonnesting superclass functions.
//!
//! A vector of `nnfp[I]` is a finite sum of basis functions indexed by nonnesting
//! diagrams; each diagram carries its own poset, so components on different
//! posets over the same ground set live side by side in one map. Products and
//! coproducts are computed by an [`Engine`]: [`CombinatorialEngine`] uses the
//! closed formulas, [`FunctionalEngine`] pulls functions back along the group
//! homomorphisms π and σ.

pub mod axioms;
pub mod combinatorial;
pub mod free;
pub mod functional;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::arcs::{enumerate, extend_arcs, weakly_inside, ArcDiagram};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::{check_partition, sorted_labels, Poset};
use crate::supercharacters::forbidden_pair_count;

pub use combinatorial::CombinatorialEngine;
pub use functional::FunctionalEngine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Superclass indicators κ_η.
    Kappa,
    /// Power sums p_η = Σ_{η ⊆ ν} κ_ν.
    PowerSum,
    /// Supercharacters χ_η.
    Chi,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Kappa => "kappa",
            Basis::PowerSum => "p",
            Basis::Chi => "chi",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "kappa" | "k" => Ok(Basis::Kappa),
            "p" | "powersum" => Ok(Basis::PowerSum),
            "chi" | "x" => Ok(Basis::Chi),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }

    pub const ALL: [Basis; 3] = [Basis::Kappa, Basis::PowerSum, Basis::Chi];
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, CycNumber>, key: K, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                e.insert(sum);
            }
        }
    }
}

/// An element of nnfp[I] in one of the three bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScfVector {
    ground: Vec<String>,
    field: Field,
    basis: Basis,
    coeffs: BTreeMap<ArcDiagram, CycNumber>,
}

/// Elements of the species nnfp: sums over every poset on a ground set.
pub type SpeciesElement = ScfVector;

impl ScfVector {
    pub fn zero<S: AsRef<str>>(ground: &[S], field: &Field, basis: Basis) -> ScfVector {
        ScfVector {
            ground: sorted_labels(ground.iter().map(|s| s.as_ref())),
            field: field.clone(),
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis function indexed by η.
    pub fn basis_element(basis: Basis, eta: &ArcDiagram) -> Result<ScfVector> {
        let mut v = ScfVector::zero(eta.poset().labels(), eta.field(), basis);
        v.add_term(eta, CycNumber::one(eta.field().p()))?;
        Ok(v)
    }

    /// The unit of the monoid: the constant 1 on the trivial group of the empty poset.
    pub fn unit(field: &Field, basis: Basis) -> ScfVector {
        let empty = ArcDiagram::empty(&Poset::empty(), field);
        ScfVector::basis_element(basis, &empty).expect("empty diagram is nonnesting")
    }

    pub fn from_terms<S: AsRef<str>>(
        ground: &[S],
        field: &Field,
        basis: Basis,
        terms: Vec<(ArcDiagram, CycNumber)>,
    ) -> Result<ScfVector> {
        let mut v = ScfVector::zero(ground, field, basis);
        for (d, c) in terms {
            v.add_term(&d, c)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, d: &ArcDiagram, c: CycNumber) -> Result<()> {
        if d.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if c.p() != self.field.p() {
            return Err(Error::PrimeMismatch(self.field.p(), c.p()));
        }
        if sorted_labels(d.poset().labels()) != self.ground {
            return Err(Error::BasisMismatch(format!(
                "diagram on {{{}}} in a vector on {{{}}}",
                d.poset().labels().join(","),
                self.ground.join(",")
            )));
        }
        if !d.is_nonnesting() {
            return Err(Error::NotNonnesting);
        }
        insert_term(&mut self.coeffs, d.clone(), c);
        Ok(())
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ArcDiagram, &CycNumber)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, d: &ArcDiagram) -> CycNumber {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(self.field.p()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &ScfVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(format!(
                "{} vs {}",
                self.basis, other.basis
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ScfVector) -> Result<ScfVector> {
        self.check_compatible(other)?;
        if self.ground != other.ground {
            return Err(Error::BasisMismatch(
                "vectors on different ground sets".into(),
            ));
        }
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            insert_term(&mut out.coeffs, d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNumber) -> ScfVector {
        let mut out = ScfVector::zero(&self.ground, &self.field, self.basis);
        for (d, x) in &self.coeffs {
            insert_term(&mut out.coeffs, d.clone(), x * c);
        }
        out
    }

    /// Components grouped by poset.
    pub fn components(&self) -> BTreeMap<Poset, Vec<(ArcDiagram, CycNumber)>> {
        let mut out: BTreeMap<Poset, Vec<(ArcDiagram, CycNumber)>> = BTreeMap::new();
        for (d, c) in &self.coeffs {
            out.entry(d.poset().clone())
                .or_default()
                .push((d.clone(), c.clone()));
        }
        out
    }

    /// Rewrite in another basis using the closed-form supercharacter table.
    pub fn to_basis(&self, target: Basis) -> Result<ScfVector> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut kappa = ScfVector::zero(&self.ground, &self.field, Basis::Kappa);
        for (d, c) in &self.coeffs {
            for (nu, x) in expand_in_kappa(self.basis, d)? {
                insert_term(&mut kappa.coeffs, nu, &x * c);
            }
        }
        if target == Basis::Kappa {
            return Ok(kappa);
        }
        let mut out = ScfVector::zero(&self.ground, &self.field, target);
        let mut tables: HashMap<Poset, NnTable> = HashMap::new();
        for (d, c) in &kappa.coeffs {
            let table = tables
                .entry(d.poset().clone())
                .or_insert_with(|| NnTable::new(d.poset(), &self.field));
            for (eta, x) in kappa_in_basis(target, d, table)? {
                insert_term(&mut out.coeffs, eta, &x * c);
            }
        }
        Ok(out)
    }

    /// Transport along a bijection of the ground set.
    pub fn transport(&self, map: &HashMap<String, String>) -> Result<ScfVector> {
        let image = crate::poset::apply_bijection(&self.ground, map)?;
        let mut out = ScfVector::zero(&image, &self.field, self.basis);
        for (d, c) in &self.coeffs {
            insert_term(&mut out.coeffs, d.relabel(map)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for ScfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}{d}", self.basis)?;
            write!(f, "@{{{}", d.poset().labels().join(","))?;
            let covers = d.poset().cover_labels();
            if !covers.is_empty() {
                let covers: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                write!(f, "; {}", covers.join(" "))?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// A sum of pure tensors of basis functions, one diagram per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    grounds: Vec<Vec<String>>,
    field: Field,
    basis: Basis,
    terms: BTreeMap<Vec<ArcDiagram>, CycNumber>,
}

impl TensorElement {
    pub fn zero(grounds: Vec<Vec<String>>, field: &Field, basis: Basis) -> TensorElement {
        TensorElement {
            grounds: grounds.into_iter().map(sorted_labels).collect(),
            field: field.clone(),
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// v₁ ⊗ v₂ ⊗ … expanded into pure basis tensors.
    pub fn pure(factors: &[ScfVector]) -> Result<TensorElement> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Unsupported("empty tensor".into()))?;
        let mut t = TensorElement::zero(
            factors.iter().map(|v| v.ground.clone()).collect(),
            &first.field,
            first.basis,
        );
        let mut partial: Vec<(Vec<ArcDiagram>, CycNumber)> =
            vec![(Vec::new(), CycNumber::one(first.field.p()))];
        for v in factors {
            first.check_compatible(v)?;
            let mut next = Vec::new();
            for (ds, c) in &partial {
                for (d, x) in &v.coeffs {
                    let mut e = ds.clone();
                    e.push(d.clone());
                    next.push((e, c * x));
                }
            }
            partial = next;
        }
        for (ds, c) in partial {
            insert_term(&mut t.terms, ds, c);
        }
        Ok(t)
    }

    pub fn arity(&self) -> usize {
        self.grounds.len()
    }

    pub fn grounds(&self) -> &[Vec<String>] {
        &self.grounds
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<ArcDiagram>, &CycNumber)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, factors: &[ArcDiagram]) -> CycNumber {
        self.terms
            .get(factors)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(self.field.p()))
    }

    pub fn add_term(&mut self, factors: Vec<ArcDiagram>, c: CycNumber) -> Result<()> {
        if factors.len() != self.arity() {
            return Err(Error::BasisMismatch(format!(
                "{} factors in a {}-fold tensor",
                factors.len(),
                self.arity()
            )));
        }
        for (d, g) in factors.iter().zip(&self.grounds) {
            if &sorted_labels(d.poset().labels()) != g {
                return Err(Error::BasisMismatch(
                    "factor on the wrong ground set".into(),
                ));
            }
        }
        insert_term(&mut self.terms, factors, c);
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.grounds != other.grounds || self.basis != other.basis || self.field != other.field {
            return Err(Error::BasisMismatch("incompatible tensors".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            insert_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Reorder factors: factor k of the result is factor `order[k]` of self.
    pub fn permute(&self, order: &[usize]) -> TensorElement {
        let mut out = TensorElement::zero(
            order.iter().map(|&k| self.grounds[k].clone()).collect(),
            &self.field,
            self.basis,
        );
        for (ds, c) in &self.terms {
            insert_term(
                &mut out.terms,
                order.iter().map(|&k| ds[k].clone()).collect(),
                c.clone(),
            );
        }
        out
    }

    /// The factor swap of a 2-tensor.
    pub fn swap(&self) -> TensorElement {
        self.permute(&[1, 0])
    }

    /// self ⊗ other.
    pub fn tensor(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.basis != other.basis || self.field != other.field {
            return Err(Error::BasisMismatch("incompatible tensors".into()));
        }
        let mut grounds = self.grounds.clone();
        grounds.extend(other.grounds.iter().cloned());
        let mut out = TensorElement::zero(grounds, &self.field, self.basis);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut k = a.clone();
                k.extend(b.iter().cloned());
                insert_term(&mut out.terms, k, x * y);
            }
        }
        Ok(out)
    }

    /// Apply a linear map to factor `k`, replacing it by `arity` new factors.
    pub fn map_factor<F>(
        &self,
        k: usize,
        new_grounds: Vec<Vec<String>>,
        mut f: F,
    ) -> Result<TensorElement>
    where
        F: FnMut(&ArcDiagram) -> Result<Vec<(Vec<ArcDiagram>, CycNumber)>>,
    {
        let mut grounds = self.grounds[..k].to_vec();
        grounds.extend(new_grounds.iter().cloned());
        grounds.extend(self.grounds[k + 1..].iter().cloned());
        let mut out = TensorElement::zero(grounds, &self.field, self.basis);
        for (ds, c) in &self.terms {
            for (parts, x) in f(&ds[k])? {
                let mut key = ds[..k].to_vec();
                key.extend(parts);
                key.extend(ds[k + 1..].iter().cloned());
                out.add_term(key, c * &x)?;
            }
        }
        Ok(out)
    }

    /// Relabel every factor along one bijection defined on the union of the grounds.
    pub fn transport(&self, map: &HashMap<String, String>) -> Result<TensorElement> {
        let grounds = self
            .grounds
            .iter()
            .map(|g| {
                g.iter()
                    .map(|l| {
                        map.get(l)
                            .cloned()
                            .ok_or_else(|| Error::NotABijection(l.clone()))
                    })
                    .collect::<Result<Vec<String>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = TensorElement::zero(grounds, &self.field, self.basis);
        for (ds, c) in &self.terms {
            let key = ds
                .iter()
                .map(|d| {
                    let part: HashMap<String, String> = d
                        .poset()
                        .labels()
                        .iter()
                        .map(|l| (l.clone(), map[l].clone()))
                        .collect();
                    d.relabel(&part)
                })
                .collect::<Result<Vec<_>>>()?;
            out.add_term(key, c.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (ds, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let parts: Vec<String> = ds.iter().map(|d| format!("{}{d}", self.basis)).collect();
            write!(f, "({c}) {}", parts.join(" ⊗ "))?;
        }
        Ok(())
    }
}

// ----- basis changes -----

/// The nonnesting superclass data of one poset, from closed forms only.
pub(crate) struct NnTable {
    pub diagrams: Vec<ArcDiagram>,
    pub sizes: Vec<BigUint>,
}

impl NnTable {
    pub fn new(poset: &Poset, field: &Field) -> NnTable {
        let group = crate::pattern::PatternGroup::new(poset, field);
        let diagrams = enumerate(poset, field, true);
        let sizes = diagrams
            .iter()
            .map(|d| {
                group
                    .superclass_size(d)
                    .expect("enumerated diagrams are nonnesting")
            })
            .collect();
        NnTable { diagrams, sizes }
    }
}

/// Whether some arc of ν lies weakly inside another arc of η (the vanishing condition).
pub(crate) fn blocks(eta: &ArcDiagram, nu: &ArcDiagram) -> bool {
    let p = eta.poset();
    eta.arcs().iter().any(|a| {
        nu.arcs()
            .iter()
            .any(|b| weakly_inside(p, a.pair(), b.pair()))
    })
}

/// A basis function written in the κ basis.
pub fn expand_in_kappa(basis: Basis, eta: &ArcDiagram) -> Result<Vec<(ArcDiagram, CycNumber)>> {
    let p = eta.field().p();
    match basis {
        Basis::Kappa => Ok(vec![(eta.clone(), CycNumber::one(p))]),
        Basis::PowerSum => {
            let poset = eta.poset();
            Ok(
                extend_arcs(poset, eta.field(), eta.arcs(), &poset.strict_pairs(), true)
                    .into_iter()
                    .map(|arcs| {
                        (
                            ArcDiagram::validate(poset, eta.field(), &arcs)
                                .expect("extensions are valid"),
                            CycNumber::one(p),
                        )
                    })
                    .collect(),
            )
        }
        Basis::Chi => enumerate(eta.poset(), eta.field(), true)
            .into_iter()
            .map(|nu| {
                let v = crate::supercharacters::supercharacter_value(eta, &nu)?;
                Ok((nu, v))
            })
            .collect(),
    }
}

/// κ_ν written in another basis: Möbius inversion for power sums, orthogonality for characters.
pub(crate) fn kappa_in_basis(
    target: Basis,
    nu: &ArcDiagram,
    table: &NnTable,
) -> Result<Vec<(ArcDiagram, CycNumber)>> {
    let p = nu.field().p();
    match target {
        Basis::Kappa => Ok(vec![(nu.clone(), CycNumber::one(p))]),
        Basis::PowerSum => kappa_in_basis_powersum(nu),
        Basis::Chi => {
            // κ_ν = Σ_η |K_ν| conj χ_η(ν) / (|G| ⟨χ_η, χ_η⟩) χ_η, and for the nonnesting
            // characters |G|⟨χ_η, χ_η⟩ = χ_η(1)² Σ_{ν' not blocked by η} |K_ν'|
            let k = table
                .diagrams
                .iter()
                .position(|d| d == nu)
                .ok_or(Error::PosetMismatch)?;
            let mut out = Vec::new();
            for eta in &table.diagrams {
                if blocks(eta, nu) {
                    continue;
                }
                let dim = BigUint::from(eta.field().q()).pow(forbidden_pair_count(eta) as u32);
                let unblocked: BigUint = table
                    .diagrams
                    .iter()
                    .zip(&table.sizes)
                    .filter(|(d, _)| !blocks(eta, d))
                    .map(|(_, s)| s.clone())
                    .sum();
                let value = crate::supercharacters::supercharacter_value(eta, nu)?;
                let scale = BigRational::new(
                    BigInt::from(table.sizes[k].clone()),
                    BigInt::from(&dim * &dim * unblocked),
                );
                out.push((eta.clone(), value.conj().scale(&scale)));
            }
            Ok(out)
        }
    }
}

/// Möbius inversion of κ coefficients into p coefficients, for a map on one poset.
pub(crate) fn kappa_coeffs_to_powersum(
    coeffs: &BTreeMap<ArcDiagram, CycNumber>,
) -> Result<BTreeMap<ArcDiagram, CycNumber>> {
    let mut out = BTreeMap::new();
    for (nu, c) in coeffs {
        for (rho, s) in kappa_in_basis_powersum(nu)? {
            insert_term(&mut out, rho, &s * c);
        }
    }
    Ok(out)
}

/// κ_ν = Σ_{ρ ⊇ ν} (−1)^{|ρ|−|ν|} p_ρ; the interval [ν, ρ] of nonnesting diagrams is Boolean.
fn kappa_in_basis_powersum(nu: &ArcDiagram) -> Result<Vec<(ArcDiagram, CycNumber)>> {
    let p = nu.field().p();
    Ok(expand_in_kappa(Basis::PowerSum, nu)?
        .into_iter()
        .map(|(rho, _)| {
            let sign = if (rho.len() - nu.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (rho, CycNumber::from_integer(p, sign))
        })
        .collect())
}

// ----- engines -----

/// Product and coproduct on basis functions; extended bilinearly by [`product`] and [`coproduct`].
pub trait Engine {
    fn name(&self) -> &'static str;

    /// μ(b_η ⊗ b_ν) for η on P and ν on Q with disjoint ground sets, as terms on P·Q.
    fn product_basis(
        &self,
        basis: Basis,
        left: &ArcDiagram,
        right: &ArcDiagram,
    ) -> Result<Vec<(ArcDiagram, CycNumber)>>;

    /// Δ_{S,T}(b_η) as (left diagram on P|S, right diagram on P|T, coefficient) terms.
    fn coproduct_basis(
        &self,
        basis: Basis,
        eta: &ArcDiagram,
        s: &[String],
        t: &[String],
    ) -> Result<Vec<(ArcDiagram, ArcDiagram, CycNumber)>>;
}

/// μ_{S,T}(a ⊗ b). Products with the empty ground set are the canonical identifications.
pub fn product(engine: &dyn Engine, a: &ScfVector, b: &ScfVector) -> Result<ScfVector> {
    a.check_compatible(b)?;
    if let Some(l) = a.ground.iter().find(|l| b.ground.contains(l)) {
        return Err(Error::OverlappingGroundSets(l.clone()));
    }
    if a.ground.is_empty() {
        return Ok(b.scale(&a.coefficient(&ArcDiagram::empty(&Poset::empty(), &a.field))));
    }
    if b.ground.is_empty() {
        return Ok(a.scale(&b.coefficient(&ArcDiagram::empty(&Poset::empty(), &b.field))));
    }
    let ground: Vec<String> = a.ground.iter().chain(&b.ground).cloned().collect();
    let mut out = ScfVector::zero(&ground, &a.field, a.basis);
    for (x, c) in &a.coeffs {
        for (y, d) in &b.coeffs {
            let cd = c * d;
            for (z, e) in engine.product_basis(a.basis, x, y)? {
                insert_term(&mut out.coeffs, z, &e * &cd);
            }
        }
    }
    Ok(out)
}

/// Δ_{S,T}(a). Coproducts with an empty side are the canonical identifications.
pub fn coproduct(
    engine: &dyn Engine,
    a: &ScfVector,
    s: &[String],
    t: &[String],
) -> Result<TensorElement> {
    let s = sorted_labels(s);
    let t = sorted_labels(t);
    check_partition(&Poset::antichain(&a.ground)?, &s, &t)?;
    let mut out = TensorElement::zero(vec![s.clone(), t.clone()], &a.field, a.basis);
    let empty = ArcDiagram::empty(&Poset::empty(), &a.field);
    for (x, c) in &a.coeffs {
        if s.is_empty() {
            insert_term(&mut out.terms, vec![empty.clone(), x.clone()], c.clone());
        } else if t.is_empty() {
            insert_term(&mut out.terms, vec![x.clone(), empty.clone()], c.clone());
        } else {
            for (l, r, e) in engine.coproduct_basis(a.basis, x, &s, &t)? {
                insert_term(&mut out.terms, vec![l, r], &e * c);
            }
        }
    }
    Ok(out)
}

/// Multiply factors k and k+1 of a tensor.
pub fn multiply_factors(engine: &dyn Engine, t: &TensorElement, k: usize) -> Result<TensorElement> {
    let mut grounds = t.grounds[..k].to_vec();
    let merged: Vec<String> = t.grounds[k]
        .iter()
        .chain(&t.grounds[k + 1])
        .cloned()
        .collect();
    grounds.push(sorted_labels(merged));
    grounds.extend(t.grounds[k + 2..].iter().cloned());
    let mut out = TensorElement::zero(grounds, &t.field, t.basis);
    for (ds, c) in &t.terms {
        let a = ScfVector::basis_element(t.basis, &ds[k])?;
        let b = ScfVector::basis_element(t.basis, &ds[k + 1])?;
        for (z, e) in &product(engine, &a, &b)?.coeffs {
            let mut key = ds[..k].to_vec();
            key.push(z.clone());
            key.extend(ds[k + 2..].iter().cloned());
            out.add_term(key, c * e)?;
        }
    }
    Ok(out)
}

/// Apply Δ_{S,T} to factor k of a tensor.
pub fn comultiply_factor(
    engine: &dyn Engine,
    t: &TensorElement,
    k: usize,
    s: &[String],
    u: &[String],
) -> Result<TensorElement> {
    let (s, u) = (sorted_labels(s), sorted_labels(u));
    t.map_factor(k, vec![s.clone(), u.clone()], |d| {
        let v = ScfVector::basis_element(t.basis, d)?;
        Ok(coproduct(engine, &v, &s, &u)?.terms.into_iter().collect())
    })
}
