//! Product and coproduct computed on functions: pull back along π or σ, then
//! read the result off in the requested basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{insert_term, kappa_coeffs_to_powersum, kappa_in_basis_powersum, Basis, Engine};
use crate::arcs::ArcDiagram;
use crate::cyclotomic::{CycNumber, RootSum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pattern::{PatternGroup, SuperclassPartition, DEFAULT_GROUP_LIMIT};
use crate::poset::{check_partition, Poset};
use crate::supercharacters::{ind_res_character, ClassFunction};

struct GroupCache {
    group: PatternGroup,
    partition: SuperclassPartition,
    reps: Vec<u64>,
    position: HashMap<ArcDiagram, usize>,
    chi: OnceLock<Vec<ClassFunction>>,
    norms: OnceLock<Vec<CycNumber>>,
}

impl GroupCache {
    fn new(poset: &Poset, field: &Field, limit: u64) -> Result<GroupCache> {
        let group = PatternGroup::with_limit(poset, field, limit);
        let partition = SuperclassPartition::compute(&group)?;
        let reps = partition.representatives();
        let position = partition
            .diagrams
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, d)| (d, k))
            .collect();
        Ok(GroupCache {
            group,
            partition,
            reps,
            position,
            chi: OnceLock::new(),
            norms: OnceLock::new(),
        })
    }

    fn order(&self) -> usize {
        self.partition.class_of.len()
    }

    fn position(&self, d: &ArcDiagram) -> Result<usize> {
        self.position.get(d).copied().ok_or(Error::NotNonnesting)
    }

    fn chi(&self) -> Result<&[ClassFunction]> {
        if self.chi.get().is_none() {
            let all = self
                .partition
                .diagrams
                .iter()
                .map(|eta| ind_res_character(&self.group, eta))
                .collect::<Result<Vec<_>>>()?;
            let _ = self.chi.set(all);
        }
        Ok(self.chi.get().expect("initialized above"))
    }

    fn norms(&self) -> Result<&[CycNumber]> {
        if self.norms.get().is_none() {
            let all = self
                .chi()?
                .iter()
                .map(|c| c.inner_product(c))
                .collect::<Result<Vec<_>>>()?;
            let _ = self.norms.set(all);
        }
        Ok(self.norms.get().expect("initialized above"))
    }

    /// χ_η at the representative of class ν.
    fn chi_at(&self, eta: usize, nu: usize) -> Result<CycNumber> {
        Ok(self.chi()?[eta].value_at(self.reps[nu]))
    }

    fn basis_values(&self, basis: Basis, eta: &ArcDiagram) -> Result<Vec<RootSum>> {
        let k = self.position(eta)?;
        let p = self.group.field().p();
        let one = RootSum::monomial(p, 1, 0);
        let zero = RootSum::zero(p);
        match basis {
            Basis::Kappa => Ok(self
                .partition
                .class_of
                .iter()
                .map(|&c| {
                    if c as usize == k {
                        one.clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()),
            Basis::PowerSum => {
                let contains: Vec<bool> = self
                    .partition
                    .diagrams
                    .iter()
                    .map(|nu| eta.is_subdiagram_of(nu))
                    .collect();
                Ok(self
                    .partition
                    .class_of
                    .iter()
                    .map(|&c| {
                        if contains[c as usize] {
                            one.clone()
                        } else {
                            zero.clone()
                        }
                    })
                    .collect())
            }
            Basis::Chi => Ok(self.chi()?[k]
                .root_sums()
                .expect("supercharacters have integral values")
                .to_vec()),
        }
    }

    /// κ coefficients of a function given on every element; errors unless it is
    /// constant on superclasses.
    fn kappa_coeffs(&self, values: &[RootSum]) -> Result<Vec<RootSum>> {
        let coeffs: Vec<RootSum> = self
            .reps
            .iter()
            .map(|&r| values[r as usize].normalized())
            .collect();
        for (k, v) in values.iter().enumerate() {
            let c = self.partition.class_of[k] as usize;
            if v.normalized() != coeffs[c] {
                return Err(Error::NotSuperclassFunction(format!(
                    "values differ on the superclass of {}",
                    self.partition.diagrams[c]
                )));
            }
        }
        Ok(coeffs)
    }

    /// Coefficients of κ_ν in the χ basis: |K_ν| conj χ_η(ν) / (|G| ⟨χ_η, χ_η⟩).
    fn kappa_to_chi(&self, nu: usize, eta: usize) -> Result<CycNumber> {
        let scale = BigRational::new(
            BigInt::from(self.partition.sizes[nu]),
            BigInt::from(self.order() as u64),
        );
        let v = self.chi_at(eta, nu)?.conj().scale(&scale);
        v.checked_div(&self.norms()?[eta])
    }

    fn express(&self, basis: Basis, values: &[RootSum]) -> Result<Vec<(ArcDiagram, CycNumber)>> {
        let coeffs = self.kappa_coeffs(values)?;
        let mut kappa = BTreeMap::new();
        for (d, c) in self.partition.diagrams.iter().zip(&coeffs) {
            insert_term(&mut kappa, d.clone(), c.to_cyc());
        }
        match basis {
            Basis::Kappa => Ok(kappa.into_iter().collect()),
            Basis::PowerSum => Ok(kappa_coeffs_to_powersum(&kappa)?.into_iter().collect()),
            Basis::Chi => {
                let n = self.partition.diagrams.len();
                let p = self.group.field().p();
                let mut d = vec![CycNumber::zero(p); n];
                for (nu, c) in coeffs.iter().enumerate() {
                    if c.is_zero_coeffs() {
                        continue;
                    }
                    let c = c.to_cyc();
                    for (eta, slot) in d.iter_mut().enumerate() {
                        *slot = &*slot + &(&c * &self.kappa_to_chi(nu, eta)?);
                    }
                }
                for (nu, c) in coeffs.iter().enumerate() {
                    let mut back = CycNumber::zero(p);
                    for (eta, x) in d.iter().enumerate() {
                        if !x.is_zero() {
                            back = &back + &(x * &self.chi_at(eta, nu)?);
                        }
                    }
                    if back != c.to_cyc() {
                        return Err(Error::NotSuperclassFunction(
                            "not in the span of the supercharacters".into(),
                        ));
                    }
                }
                let mut out = BTreeMap::new();
                for (eta, x) in self.partition.diagrams.iter().zip(d) {
                    insert_term(&mut out, eta.clone(), x);
                }
                Ok(out.into_iter().collect())
            }
        }
    }
}

/// Engine that works with actual functions on pattern groups. Groups and their
/// superclass partitions are cached per (poset, field).
pub struct FunctionalEngine {
    limit: u64,
    cache: Mutex<HashMap<(Poset, Field), Arc<GroupCache>>>,
}

impl Default for FunctionalEngine {
    fn default() -> Self {
        FunctionalEngine::new(DEFAULT_GROUP_LIMIT)
    }
}

impl FunctionalEngine {
    pub fn new(limit: u64) -> FunctionalEngine {
        FunctionalEngine {
            limit,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn data(&self, poset: &Poset, field: &Field) -> Result<Arc<GroupCache>> {
        let key = (poset.clone(), field.clone());
        if let Some(d) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(d.clone());
        }
        let d = Arc::new(GroupCache::new(poset, field, self.limit)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, d.clone());
        Ok(d)
    }

    /// The basis function b_η as a class function on U_P.
    pub fn basis_function(&self, basis: Basis, eta: &ArcDiagram) -> Result<ClassFunction> {
        let data = self.data(eta.poset(), eta.field())?;
        let values = data.basis_values(basis, eta)?;
        Ok(ClassFunction::from_root_sums(&data.group, values))
    }

    /// Write a class function on U_P in the given basis.
    pub fn decompose(
        &self,
        basis: Basis,
        f: &ClassFunction,
    ) -> Result<Vec<(ArcDiagram, CycNumber)>> {
        let data = self.data(f.group().poset(), f.group().field())?;
        let values: Vec<RootSum> = match f.root_sums() {
            Some(v) => v.to_vec(),
            None => f
                .values()
                .iter()
                .map(|v| {
                    v.to_root_sum().ok_or_else(|| {
                        Error::Unsupported("only values in ℤ[ζ_p] can be decomposed".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        data.express(basis, &values)
    }
}

fn overflow() -> Error {
    Error::Unsupported("integer overflow in a function value".into())
}

fn gather(raw: &[u32], map: &[Option<usize>]) -> Vec<u32> {
    map.iter().map(|t| raw[t.expect("pair present")]).collect()
}

impl Engine for FunctionalEngine {
    fn name(&self) -> &'static str {
        "functional"
    }

    fn product_basis(
        &self,
        basis: Basis,
        left: &ArcDiagram,
        right: &ArcDiagram,
    ) -> Result<Vec<(ArcDiagram, CycNumber)>> {
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
        let field = left.field();
        let ambient = left.poset().concat(right.poset())?;
        let (dl, dr, dw) = (
            self.data(left.poset(), field)?,
            self.data(right.poset(), field)?,
            self.data(&ambient, field)?,
        );
        let fl = dl.basis_values(basis, left)?;
        let fr = dr.basis_values(basis, right)?;
        let ml = dl.group.pair_map_into(&dw.group);
        let mr = dr.group.pair_map_into(&dw.group);
        let mut values = Vec::with_capacity(dw.order());
        for k in 0..dw.order() as u64 {
            let g = dw.group.raw_at(k);
            // π(g): the diagonal blocks of g
            let a = dl.group.index_of_raw(&gather(&g, &ml)) as usize;
            let b = dr.group.index_of_raw(&gather(&g, &mr)) as usize;
            values.push(fl[a].checked_mul(&fr[b]).ok_or_else(overflow)?);
        }
        dw.express(basis, &values)
    }

    fn coproduct_basis(
        &self,
        basis: Basis,
        eta: &ArcDiagram,
        s: &[String],
        t: &[String],
    ) -> Result<Vec<(ArcDiagram, ArcDiagram, CycNumber)>> {
        check_partition(eta.poset(), s, t)?;
        let field = eta.field();
        let p = field.p();
        let poset = eta.poset();
        let dp = self.data(poset, field)?;
        let ds = self.data(&poset.restrict(s)?, field)?;
        let dt = self.data(&poset.restrict(t)?, field)?;
        let f = dp.basis_values(basis, eta)?;
        let ms = ds.group.pair_map_into(&dp.group);
        let mt = dt.group.pair_map_into(&dp.group);

        // F(a, b) = f(σ(a, b)), read off class by class and checked for constancy
        let (ns, nt) = (ds.order(), dt.order());
        let mut coeffs: HashMap<(usize, usize), RootSum> = HashMap::new();
        let mut entries = vec![0u32; dp.group.dim()];
        for a in 0..ns {
            let ra = ds.group.raw_at(a as u64);
            let ca = ds.partition.class_of[a] as usize;
            for b in 0..nt {
                let rb = dt.group.raw_at(b as u64);
                let cb = dt.partition.class_of[b] as usize;
                entries.iter_mut().for_each(|e| *e = 0);
                for (u, &x) in ra.iter().enumerate() {
                    entries[ms[u].expect("restriction pair")] = x;
                }
                for (u, &x) in rb.iter().enumerate() {
                    entries[mt[u].expect("restriction pair")] = x;
                }
                let v = f[dp.group.index_of_raw(&entries) as usize].normalized();
                match coeffs.get(&(ca, cb)) {
                    None => {
                        coeffs.insert((ca, cb), v);
                    }
                    Some(c) if *c == v => {}
                    Some(_) => {
                        return Err(Error::NotSuperclassFunction(format!(
                            "pullback differs on the superclass pair ({}, {})",
                            ds.partition.diagrams[ca], dt.partition.diagrams[cb]
                        )))
                    }
                }
            }
        }
        let mut kappa: BTreeMap<(usize, usize), CycNumber> = BTreeMap::new();
        for (k, v) in coeffs {
            if !v.is_zero_coeffs() {
                kappa.insert(k, v.to_cyc());
            }
        }
        let diag_s = &ds.partition.diagrams;
        let diag_t = &dt.partition.diagrams;
        let mut out: BTreeMap<(ArcDiagram, ArcDiagram), CycNumber> = BTreeMap::new();
        match basis {
            Basis::Kappa => {
                for ((a, b), c) in kappa {
                    insert_term(&mut out, (diag_s[a].clone(), diag_t[b].clone()), c);
                }
            }
            Basis::PowerSum => {
                for ((a, b), c) in kappa {
                    for (x, sx) in kappa_in_basis_powersum(&diag_s[a])? {
                        for (y, sy) in kappa_in_basis_powersum(&diag_t[b])? {
                            insert_term(&mut out, (x.clone(), y), &(&sx * &sy) * &c);
                        }
                    }
                }
            }
            Basis::Chi => {
                let (es, et) = (diag_s.len(), diag_t.len());
                let mut d = vec![vec![CycNumber::zero(p); et]; es];
                for ((a, b), c) in &kappa {
                    for (x, row) in d.iter_mut().enumerate() {
                        let cx = &ds.kappa_to_chi(*a, x)? * c;
                        if cx.is_zero() {
                            continue;
                        }
                        for (y, slot) in row.iter_mut().enumerate() {
                            *slot = &*slot + &(&cx * &dt.kappa_to_chi(*b, y)?);
                        }
                    }
                }
                // the expansion must reproduce F on every pair of classes
                for a in 0..es {
                    for b in 0..et {
                        let mut back = CycNumber::zero(p);
                        for (x, row) in d.iter().enumerate() {
                            for (y, v) in row.iter().enumerate() {
                                if !v.is_zero() {
                                    back =
                                        &back + &(&(v * &ds.chi_at(x, a)?) * &dt.chi_at(y, b)?);
                                }
                            }
                        }
                        let want = kappa
                            .get(&(a, b))
                            .cloned()
                            .unwrap_or_else(|| CycNumber::zero(p));
                        if back != want {
                            return Err(Error::NotSuperclassFunction(
                                "pullback is not in the span of the supercharacters".into(),
                            ));
                        }
                    }
                }
                for (x, row) in d.into_iter().enumerate() {
                    for (y, v) in row.into_iter().enumerate() {
                        insert_term(&mut out, (diag_s[x].clone(), diag_t[y].clone()), v);
                    }
                }
            }
        }
        Ok(out.into_iter().map(|((l, r), c)| (l, r, c)).collect())
    }
}
