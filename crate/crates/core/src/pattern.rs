//! Pattern groups U_P = 1 + u_P over GF(q), their algebras and dual spaces.
//!
//! Matrices are stored densely over the strict pairs of the poset (in
//! canonical pair order) with an implicit unit diagonal for group elements.
//! Group elements are enumerated in mixed radix q with the first pair most
//! significant, so an element's index doubles as its position in every
//! materialized class function.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arcs::{weakly_inside, ArcDiagram, LabeledArc};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::{check_partition, Poset};

/// (source pair, target pair) couples.
type Moves = Vec<(usize, usize)>;

/// Default bound on the number of elements any exhaustive operation may touch.
pub const DEFAULT_GROUP_LIMIT: u64 = 1 << 20;

#[derive(Clone)]
pub struct PatternGroup(Arc<GroupData>);

struct GroupData {
    poset: Poset,
    field: Field,
    limit: u64,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<Option<usize>>,
    /// For each pair (i,j): the (pair (i,k), pair (k,j)) index couples with i ≺ k ≺ j.
    products: Vec<Vec<(usize, usize)>>,
    /// For each pair: the other pairs weakly inside it.
    inside: Vec<Vec<usize>>,
    /// For each pair: the other pairs weakly around it.
    around: Vec<Vec<usize>>,
}

impl PatternGroup {
    pub fn new(poset: &Poset, field: &Field) -> PatternGroup {
        PatternGroup::with_limit(poset, field, DEFAULT_GROUP_LIMIT)
    }

    pub fn with_limit(poset: &Poset, field: &Field, limit: u64) -> PatternGroup {
        let n = poset.len();
        let pairs = poset.strict_pairs();
        let mut pair_index = vec![None; n * n];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            pair_index[i * n + j] = Some(t);
        }
        let products = pairs
            .iter()
            .map(|&(i, j)| {
                (0..n)
                    .filter(|&k| poset.lt(i, k) && poset.lt(k, j))
                    .map(|k| {
                        (
                            pair_index[i * n + k].unwrap(),
                            pair_index[k * n + j].unwrap(),
                        )
                    })
                    .collect()
            })
            .collect();
        let inside = pairs
            .iter()
            .map(|&a| {
                (0..pairs.len())
                    .filter(|&u| weakly_inside(poset, a, pairs[u]))
                    .collect()
            })
            .collect();
        let around = pairs
            .iter()
            .map(|&a| {
                (0..pairs.len())
                    .filter(|&u| weakly_inside(poset, pairs[u], a))
                    .collect()
            })
            .collect();
        PatternGroup(Arc::new(GroupData {
            poset: poset.clone(),
            field: field.clone(),
            limit,
            pairs,
            pair_index,
            products,
            inside,
            around,
        }))
    }

    pub fn poset(&self) -> &Poset {
        &self.0.poset
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn limit(&self) -> u64 {
        self.0.limit
    }

    /// Strict pairs (i, j) in canonical order; entry vectors are indexed by these.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0.pairs
    }

    pub fn dim(&self) -> usize {
        self.0.pairs.len()
    }

    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.0.pair_index[i * self.0.poset.len() + j]
    }

    /// |U_P| = q^{#pairs}, exactly.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.field.q()).pow(self.dim() as u32)
    }

    /// |U_P| when it is within the configured limit.
    pub fn checked_order(&self) -> Result<u64> {
        let order = self.order();
        match u64::try_from(&order) {
            Ok(o) if o <= self.0.limit => Ok(o),
            _ => Err(Error::GroupTooLarge {
                size: order.to_string(),
                limit: self.0.limit,
            }),
        }
    }

    fn same_group(&self, other: &PatternGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.poset == other.0.poset && self.0.field == other.0.field)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            entries: vec![0; self.dim()],
        }
    }

    pub fn element(&self, entries: Vec<u32>) -> Result<GroupElement> {
        self.check_entries(&entries)?;
        Ok(GroupElement {
            group: self.clone(),
            entries,
        })
    }

    pub fn algebra_element(&self, entries: Vec<u32>) -> Result<AlgebraElement> {
        self.check_entries(&entries)?;
        Ok(AlgebraElement {
            group: self.clone(),
            entries,
        })
    }

    pub fn functional(&self, coords: Vec<u32>) -> Result<Functional> {
        self.check_entries(&coords)?;
        Ok(Functional {
            group: self.clone(),
            coords,
        })
    }

    fn check_entries(&self, entries: &[u32]) -> Result<()> {
        if entries.len() != self.dim() {
            return Err(Error::Parse(format!(
                "expected {} entries, got {}",
                self.dim(),
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&c| c >= self.0.field.q()) {
            return Err(Error::InvalidElement(format!("code {bad}")));
        }
        Ok(())
    }

    /// Entry vector from (row label, col label, code) triples; absent entries are zero.
    pub fn entries_from_labels(&self, triples: &[(String, String, u32)]) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.dim()];
        for (a, b, c) in triples {
            let i = self.0.poset.require_index(a)?;
            let j = self.0.poset.require_index(b)?;
            let t = self
                .pair_index(i, j)
                .ok_or_else(|| Error::ArcNotComparable(a.clone(), b.clone()))?;
            if *c >= self.0.field.q() {
                return Err(Error::InvalidElement(format!("code {c}")));
            }
            v[t] = *c;
        }
        Ok(v)
    }

    /// Nonzero entries as (row label, col label, code).
    pub fn label_entries(&self, entries: &[u32]) -> Vec<(String, String, u32)> {
        self.0
            .pairs
            .iter()
            .zip(entries)
            .filter(|(_, &c)| c != 0)
            .map(|(&(i, j), &c)| {
                (
                    self.0.poset.label(i).to_string(),
                    self.0.poset.label(j).to_string(),
                    c,
                )
            })
            .collect()
    }

    // ----- raw arithmetic on entry vectors -----

    /// Nilpotent product xy.
    pub fn algebra_mul_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = &self.0.field;
        self.0
            .products
            .iter()
            .map(|plan| {
                plan.iter().fold(0, |acc, &(a, b)| {
                    if x[a] == 0 || y[b] == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(x[a], y[b]))
                    }
                })
            })
            .collect()
    }

    /// (1+x)(1+y) = 1 + x + y + xy.
    pub fn mul_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = &self.0.field;
        let mut xy = self.algebra_mul_raw(x, y);
        for t in 0..xy.len() {
            xy[t] = f.add(f.add(xy[t], x[t]), y[t]);
        }
        xy
    }

    /// (1+x)⁻¹ = Σ_k (−x)^k.
    pub fn inv_raw(&self, x: &[u32]) -> Vec<u32> {
        let f = &self.0.field;
        let neg: Vec<u32> = x.iter().map(|&c| f.neg(c)).collect();
        let mut power = neg.clone();
        let mut acc = neg.clone();
        for _ in 1..self.0.poset.len() {
            power = self.algebra_mul_raw(&power, &neg);
            if power.iter().all(|&c| c == 0) {
                break;
            }
            for t in 0..acc.len() {
                acc[t] = f.add(acc[t], power[t]);
            }
        }
        acc
    }

    /// λ(x) = Σ λ_ij x_ij.
    pub fn pairing_raw(&self, lambda: &[u32], x: &[u32]) -> u32 {
        let f = &self.0.field;
        lambda.iter().zip(x).fold(0, |acc, (&a, &b)| {
            if a == 0 || b == 0 {
                acc
            } else {
                f.add(acc, f.mul(a, b))
            }
        })
    }

    /// Position of an entry vector in the enumeration order.
    pub fn index_of_raw(&self, x: &[u32]) -> u64 {
        let q = self.0.field.q() as u64;
        x.iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn raw_at(&self, mut index: u64) -> Vec<u32> {
        let q = self.0.field.q() as u64;
        let mut v = vec![0u32; self.dim()];
        for slot in v.iter_mut().rev() {
            *slot = (index % q) as u32;
            index /= q;
        }
        v
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let order = self.checked_order()?;
        Ok((0..order).map(move |k| GroupElement {
            group: self.clone(),
            entries: self.raw_at(k),
        }))
    }

    /// sml of an entry vector: nonzero entries with every other entry weakly inside them zero.
    pub fn sml_raw(&self, x: &[u32]) -> Vec<LabeledArc> {
        let mut arcs: Vec<LabeledArc> = (0..x.len())
            .filter(|&t| x[t] != 0 && self.0.inside[t].iter().all(|&u| x[u] == 0))
            .map(|t| {
                let (i, j) = self.0.pairs[t];
                LabeledArc::new(i, j, x[t])
            })
            .collect();
        arcs.sort();
        arcs
    }

    /// big of a coordinate vector: nonzero coordinates with every other coordinate weakly around them zero.
    pub fn big_raw(&self, lambda: &[u32]) -> Vec<LabeledArc> {
        let mut arcs: Vec<LabeledArc> = (0..lambda.len())
            .filter(|&t| lambda[t] != 0 && self.0.around[t].iter().all(|&u| lambda[u] == 0))
            .map(|t| {
                let (i, j) = self.0.pairs[t];
                LabeledArc::new(i, j, lambda[t])
            })
            .collect();
        arcs.sort();
        arcs
    }

    fn diagram(&self, arcs: Vec<LabeledArc>) -> ArcDiagram {
        ArcDiagram::from_sorted(&self.0.poset, &self.0.field, arcs)
    }

    fn require_own(&self, d: &ArcDiagram) -> Result<()> {
        if d.poset() != &self.0.poset {
            return Err(Error::PosetMismatch);
        }
        if d.field() != &self.0.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Pairs (i,j) forced to zero in U_η: those weakly inside some other arc of η.
    pub fn u_eta_forbidden(&self, eta: &ArcDiagram) -> Result<Vec<usize>> {
        self.require_own(eta)?;
        let arc_pairs: Vec<usize> = eta
            .arcs()
            .iter()
            .map(|a| {
                self.pair_index(a.src, a.dst)
                    .expect("arcs lie on strict pairs")
            })
            .collect();
        Ok((0..self.dim())
            .filter(|&t| arc_pairs.iter().any(|&a| self.0.inside[a].contains(&t)))
            .collect())
    }

    /// The superclass K_ν written out from its closed description: entries fixed on
    /// the arcs, free at positions around some arc, zero elsewhere.
    pub fn superclass_closed_form(&self, nu: &ArcDiagram) -> Result<Vec<GroupElement>> {
        let free = self.superclass_free_positions(nu)?;
        let q = self.0.field.q() as u64;
        let count = q
            .checked_pow(free.len() as u32)
            .filter(|&c| c <= self.0.limit)
            .ok_or_else(|| Error::GroupTooLarge {
                size: format!("{q}^{}", free.len()),
                limit: self.0.limit,
            })?;
        let mut base = vec![0u32; self.dim()];
        for a in nu.arcs() {
            base[self.pair_index(a.src, a.dst).unwrap()] = a.label;
        }
        let mut out = Vec::with_capacity(count as usize);
        for mut k in 0..count {
            let mut v = base.clone();
            for &t in free.iter().rev() {
                v[t] = (k % q) as u32;
                k /= q;
            }
            out.push(GroupElement {
                group: self.clone(),
                entries: v,
            });
        }
        out.sort_by_key(|g| self.index_of_raw(&g.entries));
        Ok(out)
    }

    fn superclass_free_positions(&self, nu: &ArcDiagram) -> Result<Vec<usize>> {
        self.require_own(nu)?;
        if !nu.is_nonnesting() {
            return Err(Error::NotNonnesting);
        }
        let arc_pairs: Vec<usize> = nu
            .arcs()
            .iter()
            .map(|a| self.pair_index(a.src, a.dst).unwrap())
            .collect();
        Ok((0..self.dim())
            .filter(|&t| arc_pairs.iter().any(|&a| self.0.around[a].contains(&t)))
            .collect())
    }

    /// |K_ν| = q^{#free positions}, from the closed description.
    pub fn superclass_size(&self, nu: &ArcDiagram) -> Result<BigUint> {
        let free = self.superclass_free_positions(nu)?;
        Ok(BigUint::from(self.0.field.q()).pow(free.len() as u32))
    }

    /// K_ν = {g : sml(g) = ν}, by filtering the whole group.
    pub fn superclass_members(&self, nu: &ArcDiagram) -> Result<Vec<GroupElement>> {
        self.require_own(nu)?;
        if !nu.is_nonnesting() {
            return Err(Error::NotNonnesting);
        }
        Ok(self
            .elements()?
            .filter(|g| self.sml_raw(&g.entries) == nu.arcs())
            .collect())
    }

    /// U_η by filtering the whole group.
    pub fn u_eta_subgroup(&self, eta: &ArcDiagram) -> Result<Vec<GroupElement>> {
        if !eta.is_nonnesting() {
            return Err(Error::NotNonnesting);
        }
        let forbidden = self.u_eta_forbidden(eta)?;
        Ok(self
            .elements()?
            .filter(|g| forbidden.iter().all(|&t| g.entries[t] == 0))
            .collect())
    }

    /// Whether a subset is a subgroup closed under conjugation by every generator 1 + c·e_ij.
    pub fn is_normal_subgroup(&self, members: &[GroupElement]) -> Result<bool> {
        let set: HashSet<&[u32]> = members.iter().map(|g| g.raw()).collect();
        if !set.contains(self.identity().raw()) {
            return Ok(false);
        }
        for a in members {
            for b in members {
                if !set.contains(self.mul_raw(&a.entries, &b.entries).as_slice()) {
                    return Ok(false);
                }
            }
        }
        let f = &self.0.field;
        for t in 0..self.dim() {
            for c in f.nonzero_codes() {
                let mut u = vec![0u32; self.dim()];
                u[t] = c;
                let ui = self.inv_raw(&u);
                for h in members {
                    let conj = self.mul_raw(&self.mul_raw(&u, &h.entries), &ui);
                    if !set.contains(conj.as_slice()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Closure of a start vector under a set of moves, breadth first.
    fn closure<F>(&self, start: Vec<u32>, moves: F) -> Result<Vec<Vec<u32>>>
    where
        F: Fn(&[u32], &mut Vec<Vec<u32>>),
    {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut next = Vec::new();
        while let Some(x) = queue.pop_front() {
            next.clear();
            moves(&x, &mut next);
            for y in next.drain(..) {
                if !seen.contains(&y) {
                    if seen.len() as u64 >= self.0.limit {
                        return Err(Error::GroupTooLarge {
                            size: format!("> {}", self.0.limit),
                            limit: self.0.limit,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_by_key(|v| self.index_of_raw(v));
        Ok(out)
    }

    /// Row and column moves of the generators 1 + c·e_ij: for each pair (i,j),
    /// the (source pair, target pair) couples touched by left and right action.
    fn generator_moves(&self) -> Vec<(Moves, Moves)> {
        let n = self.0.poset.len();
        self.0
            .pairs
            .iter()
            .map(|&(i, j)| {
                // left: row i += c·row j, moving (j,l) into (i,l)
                let left = (0..n)
                    .filter_map(|l| Some((self.pair_index(j, l)?, self.pair_index(i, l)?)))
                    .collect();
                // right: column j += c·column i, moving (k,i) into (k,j)
                let right = (0..n)
                    .filter_map(|k| Some((self.pair_index(k, i)?, self.pair_index(k, j)?)))
                    .collect();
                (left, right)
            })
            .collect()
    }

    /// U x U, by closure under left and right multiplication by generators.
    pub fn two_sided_orbit(&self, x: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        if !self.same_group(&x.group) {
            return Err(Error::PosetMismatch);
        }
        let f = self.0.field.clone();
        let moves = self.generator_moves();
        let orbit = self.closure(x.entries.clone(), |v, out| {
            for (left, right) in &moves {
                for c in f.nonzero_codes() {
                    for side in [left, right] {
                        let mut w = v.to_vec();
                        for &(src, dst) in side {
                            if v[src] != 0 {
                                w[dst] = f.add(w[dst], f.mul(c, v[src]));
                            }
                        }
                        out.push(w);
                    }
                }
            }
        })?;
        Ok(orbit
            .into_iter()
            .map(|entries| AlgebraElement {
                group: self.clone(),
                entries,
            })
            .collect())
    }

    /// U λ U under the contragredient actions, by closure under generators.
    pub fn dual_orbit(&self, lambda: &Functional) -> Result<Vec<Functional>> {
        if !self.same_group(&lambda.group) {
            return Err(Error::PosetMismatch);
        }
        let f = self.0.field.clone();
        let moves = self.generator_moves();
        let orbit = self.closure(lambda.coords.clone(), |v, out| {
            for (left, right) in &moves {
                for c in f.nonzero_codes() {
                    // λ(u x) and λ(x u): the algebra moves run backwards on coordinates
                    for side in [left, right] {
                        let mut w = v.to_vec();
                        for &(src, dst) in side {
                            if v[dst] != 0 {
                                w[src] = f.add(w[src], f.mul(c, v[dst]));
                            }
                        }
                        out.push(w);
                    }
                }
            }
        })?;
        Ok(orbit
            .into_iter()
            .map(|coords| Functional {
                group: self.clone(),
                coords,
            })
            .collect())
    }

    /// Conjugacy classes as sorted lists of element indices, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<u64>>> {
        let order = self.checked_order()?;
        let f = &self.0.field;
        let gens: Vec<(Vec<u32>, Vec<u32>)> = (0..self.dim())
            .flat_map(|t| {
                f.nonzero_codes().map(move |c| {
                    let mut u = vec![0u32; self.dim()];
                    u[t] = c;
                    let ui = self.inv_raw(&u);
                    (u, ui)
                })
            })
            .collect();
        let mut class_of = vec![u32::MAX; order as usize];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![start];
            class_of[start as usize] = id;
            let mut queue = VecDeque::from([self.raw_at(start)]);
            while let Some(h) = queue.pop_front() {
                for (u, ui) in &gens {
                    let c = self.mul_raw(&self.mul_raw(u, &h), ui);
                    let k = self.index_of_raw(&c);
                    if class_of[k as usize] == u32::MAX {
                        class_of[k as usize] = id;
                        members.push(k);
                        queue.push_back(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(classes)
    }

    /// Map each pair of `self` to the pair with the same labels in `other`.
    pub(crate) fn pair_map_into(&self, other: &PatternGroup) -> Vec<Option<usize>> {
        let (p, o) = (&self.0.poset, &other.0.poset);
        self.0
            .pairs
            .iter()
            .map(|&(i, j)| {
                let a = o.index_of(p.label(i))?;
                let b = o.index_of(p.label(j))?;
                other.pair_index(a, b)
            })
            .collect()
    }

    /// π: U_{P·Q} → U_P × U_Q, reading off the diagonal blocks.
    pub fn project_pi(
        &self,
        g: &GroupElement,
        left: &PatternGroup,
        right: &PatternGroup,
    ) -> Result<(GroupElement, GroupElement)> {
        if !self.same_group(&g.group) {
            return Err(Error::PosetMismatch);
        }
        if left.0.poset.concat(&right.0.poset)? != self.0.poset {
            return Err(Error::PosetMismatch);
        }
        let take = |h: &PatternGroup| {
            let map = h.pair_map_into(self);
            GroupElement {
                group: h.clone(),
                entries: map
                    .iter()
                    .map(|t| g.entries[t.expect("block pair")])
                    .collect(),
            }
        };
        Ok((take(left), take(right)))
    }

    /// σ: U_{P|S} × U_{P|T} → U_P, zero-filling the mixed entries.
    pub fn embed_sigma(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let (s, t) = (g.group.poset(), h.group.poset());
        check_partition(&self.0.poset, s.labels(), t.labels())?;
        if &self.0.poset.restrict(s.labels())? != s || &self.0.poset.restrict(t.labels())? != t {
            return Err(Error::PosetMismatch);
        }
        let mut entries = vec![0u32; self.dim()];
        for part in [g, h] {
            for (u, target) in part.group.pair_map_into(self).into_iter().enumerate() {
                entries[target.expect("restriction pairs are ambient pairs")] = part.entries[u];
            }
        }
        Ok(GroupElement {
            group: self.clone(),
            entries,
        })
    }
}

impl fmt::Debug for PatternGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({:?}, {:?})", self.0.poset, self.0.field)
    }
}

macro_rules! matrix_type {
    ($name:ident, $field:ident) => {
        #[derive(Clone)]
        pub struct $name {
            group: PatternGroup,
            $field: Vec<u32>,
        }

        impl $name {
            pub fn group(&self) -> &PatternGroup {
                &self.group
            }

            pub fn poset(&self) -> &Poset {
                self.group.poset()
            }

            pub fn field(&self) -> &Field {
                self.group.field()
            }

            /// Field element codes indexed by the group's strict pairs.
            pub fn raw(&self) -> &[u32] {
                &self.$field
            }

            /// The (i, j) entry by canonical indices; zero off the pattern.
            pub fn get(&self, i: usize, j: usize) -> u32 {
                self.group.pair_index(i, j).map_or(0, |t| self.$field[t])
            }

            pub fn get_labels(&self, a: &str, b: &str) -> Result<u32> {
                let p = self.group.poset();
                Ok(self.get(p.require_index(a)?, p.require_index(b)?))
            }

            /// Nonzero entries as (row label, col label, code).
            pub fn label_entries(&self) -> Vec<(String, String, u32)> {
                self.group.label_entries(&self.$field)
            }

            pub fn index(&self) -> u64 {
                self.group.index_of_raw(&self.$field)
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.$field == other.$field && self.group.same_group(&other.group)
            }
        }

        impl Eq for $name {}

        impl std::hash::Hash for $name {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                self.$field.hash(state);
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self
                    .label_entries()
                    .iter()
                    .map(|(a, b, c)| format!("{a}{b}:{}", self.group.field().format(*c)))
                    .collect();
                write!(f, "{}[{}]", stringify!($name), parts.join(" "))
            }
        }
    };
}

matrix_type!(GroupElement, entries);
matrix_type!(AlgebraElement, entries);
matrix_type!(Functional, coords);

impl GroupElement {
    fn check(&self, other: &GroupElement) -> Result<()> {
        if self.group.poset() != other.group.poset() {
            return Err(Error::PosetMismatch);
        }
        if self.group.field() != other.group.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other)?;
        Ok(GroupElement {
            group: self.group.clone(),
            entries: self.group.mul_raw(&self.entries, &other.entries),
        })
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            entries: self.group.inv_raw(&self.entries),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    /// f(1 + x) = x.
    pub fn f_map(&self) -> AlgebraElement {
        AlgebraElement {
            group: self.group.clone(),
            entries: self.entries.clone(),
        }
    }

    pub fn sml(&self) -> ArcDiagram {
        self.group.diagram(self.group.sml_raw(&self.entries))
    }

    /// The superclass containing this element, named by its diagram.
    pub fn superclass(&self) -> ArcDiagram {
        self.sml()
    }
}

impl AlgebraElement {
    /// f⁻¹(x) = 1 + x.
    pub fn f_inv(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            entries: self.entries.clone(),
        }
    }
}

impl Functional {
    /// The functional with the diagram's labels on its arcs and zero elsewhere.
    pub fn from_diagram(group: &PatternGroup, d: &ArcDiagram) -> Result<Functional> {
        group.require_own(d)?;
        let mut coords = vec![0u32; group.dim()];
        for a in d.arcs() {
            coords[group.pair_index(a.src, a.dst).unwrap()] = a.label;
        }
        Ok(Functional {
            group: group.clone(),
            coords,
        })
    }

    pub fn big(&self) -> ArcDiagram {
        self.group.diagram(self.group.big_raw(&self.coords))
    }

    /// λ(x).
    pub fn apply(&self, x: &AlgebraElement) -> Result<u32> {
        if !self.group.same_group(&x.group) {
            return Err(Error::PosetMismatch);
        }
        Ok(self.group.pairing_raw(&self.coords, &x.entries))
    }
}

impl AlgebraElement {
    /// The algebra element with the diagram's labels on its arcs.
    pub fn from_diagram(group: &PatternGroup, d: &ArcDiagram) -> Result<AlgebraElement> {
        let lam = Functional::from_diagram(group, d)?;
        Ok(AlgebraElement {
            group: group.clone(),
            entries: lam.coords,
        })
    }
}

/// Every element's superclass index, with the nonnesting diagrams listed in enumeration order.
pub struct SuperclassPartition {
    pub diagrams: Vec<ArcDiagram>,
    pub class_of: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl SuperclassPartition {
    /// Brute-force partition of the group by sml.
    pub fn compute(group: &PatternGroup) -> Result<SuperclassPartition> {
        let order = group.checked_order()?;
        let diagrams = crate::arcs::enumerate(group.poset(), group.field(), true);
        let index: HashMap<Vec<LabeledArc>, u32> = diagrams
            .iter()
            .enumerate()
            .map(|(k, d)| (d.arcs().to_vec(), k as u32))
            .collect();
        let mut class_of = Vec::with_capacity(order as usize);
        let mut sizes = vec![0u64; diagrams.len()];
        for k in 0..order {
            let arcs = group.sml_raw(&group.raw_at(k));
            let c = *index
                .get(&arcs)
                .expect("sml of a group element is a nonnesting diagram");
            sizes[c as usize] += 1;
            class_of.push(c);
        }
        Ok(SuperclassPartition {
            diagrams,
            class_of,
            sizes,
        })
    }

    /// Index of the first element of each class.
    pub fn representatives(&self) -> Vec<u64> {
        let mut reps = vec![u64::MAX; self.diagrams.len()];
        for (k, &c) in self.class_of.iter().enumerate() {
            if reps[c as usize] == u64::MAX {
                reps[c as usize] = k as u64;
            }
        }
        reps
    }
}
