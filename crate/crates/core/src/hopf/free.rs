//! Freeness: nonnesting diagrams factor uniquely into atomic pieces along poset splits.

use std::collections::BTreeSet;

use super::{product, Basis, Engine, ScfVector};
use crate::arcs::{enumerate, ArcDiagram};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::Poset;
use crate::supercharacters::Check;

/// Largest n for the chain counts.
pub const MAX_FREE_N: usize = 5;
/// Largest n for the checks that run over every poset on [n].
pub const MAX_FREE_POSET_N: usize = 4;

#[derive(Clone, Debug)]
pub struct FreeRow {
    pub n: usize,
    /// |NN([n], q)| on the chain.
    pub nn_count: u64,
    /// Number of atomic nonnesting diagrams on the chain with n points.
    pub atomic_count: u64,
    /// Σ over compositions (c₁, …, c_k) of n of Π a(c_i).
    pub composition_sum: u64,
    /// Σ_P |NN(P, q)| over all posets on [n], when computed.
    pub poset_nn_total: Option<u64>,
    /// Σ over set compositions of [n] of the product of atomic counts, when computed.
    pub poset_composition_total: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct FreeReport {
    pub field: Field,
    pub rows: Vec<FreeRow>,
    pub checks: Vec<Check>,
}

impl FreeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn chain_on(start: usize, len: usize) -> Poset {
    let labels: Vec<String> = (start..start + len).map(|k| k.to_string()).collect();
    Poset::linear(&labels).expect("distinct labels")
}

fn atomic_on(poset: &Poset, field: &Field) -> Result<Vec<ArcDiagram>> {
    let mut out = Vec::new();
    for d in enumerate(poset, field, true) {
        if d.is_atomic()? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Every way to pick one diagram from each list, concatenated left to right.
fn concatenations(pieces: &[Vec<ArcDiagram>]) -> Result<Vec<ArcDiagram>> {
    let mut partial: Vec<Vec<ArcDiagram>> = vec![Vec::new()];
    for choices in pieces {
        let mut next = Vec::new();
        for prefix in &partial {
            for c in choices {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        partial = next;
    }
    partial
        .iter()
        .filter(|v| !v.is_empty())
        .map(|v| ArcDiagram::concatenate(v))
        .collect()
}

/// Ordered set partitions of the labels into nonempty blocks.
fn set_compositions(labels: &[String]) -> Vec<Vec<Vec<String>>> {
    if labels.is_empty() {
        return vec![Vec::new()];
    }
    let n = labels.len();
    let mut out = Vec::new();
    for mask in 1..(1usize << n) {
        let first: Vec<String> = (0..n)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| labels[k].clone())
            .collect();
        let rest: Vec<String> = (0..n)
            .filter(|k| mask >> k & 1 == 0)
            .map(|k| labels[k].clone())
            .collect();
        for mut tail in set_compositions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Count atomic diagrams, compare the composition sums with |NN|, and check that
/// factorization and concatenation are inverse bijections. With an engine, also
/// check that the power sum of a diagram is the product of the power sums of its pieces.
pub fn free_structure(
    n_max: usize,
    field: &Field,
    engine: Option<&dyn Engine>,
) -> Result<FreeReport> {
    if n_max > MAX_FREE_N {
        return Err(Error::GroundSetTooLarge {
            size: n_max,
            limit: MAX_FREE_N,
        });
    }
    let mut rows = Vec::new();
    let mut atomic_counts = vec![0u64; n_max + 1];
    let mut count_witness = None;
    let mut factor_witness = None;
    let mut bijection_witness = None;
    let mut poset_witness = None;
    let mut product_witness = None;

    for n in 1..=n_max {
        let chain = chain_on(1, n);
        let all = enumerate(&chain, field, true);
        atomic_counts[n] = atomic_on(&chain, field)?.len() as u64;
        let composition_sum: u64 = compositions(n)
            .iter()
            .map(|c| c.iter().map(|&k| atomic_counts[k]).product::<u64>())
            .sum();
        if composition_sum != all.len() as u64 && count_witness.is_none() {
            count_witness = Some(format!("n = {n}: {} vs {composition_sum}", all.len()));
        }

        for d in &all {
            let pieces = d.atomic_factorization()?;
            let parts: Vec<ArcDiagram> = pieces.iter().map(|(_, p)| p.clone()).collect();
            let mut ok = ArcDiagram::concatenate(&parts)? == *d;
            for p in &parts {
                ok &= p.is_atomic()?;
            }
            if !ok && factor_witness.is_none() {
                factor_witness = Some(format!("{d}"));
            }
            if let Some(engine) = engine {
                if parts.len() > 1 && product_witness.is_none() {
                    let mut acc = ScfVector::basis_element(Basis::PowerSum, &parts[0])?;
                    for p in &parts[1..] {
                        acc =
                            product(engine, &acc, &ScfVector::basis_element(Basis::PowerSum, p)?)?;
                    }
                    if acc != ScfVector::basis_element(Basis::PowerSum, d)? {
                        product_witness = Some(format!("{d}"));
                    }
                }
            }
        }

        // concatenations of atomic pieces hit every diagram exactly once
        let mut images = BTreeSet::new();
        let mut produced = 0usize;
        for comp in compositions(n) {
            let mut start = 1;
            let mut pieces = Vec::new();
            for &k in &comp {
                pieces.push(atomic_on(&chain_on(start, k), field)?);
                start += k;
            }
            for d in concatenations(&pieces)? {
                produced += 1;
                images.insert(d);
            }
        }
        let expected: BTreeSet<ArcDiagram> = all.iter().cloned().collect();
        if (images != expected || produced != images.len()) && bijection_witness.is_none() {
            bijection_witness = Some(format!(
                "n = {n}: {produced} products, {} distinct",
                images.len()
            ));
        }

        let (mut poset_nn_total, mut poset_composition_total) = (None, None);
        if n <= MAX_FREE_POSET_N {
            let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
            let mut total = 0u64;
            let mut everything = BTreeSet::new();
            for poset in Poset::all_on(&labels)? {
                for d in enumerate(&poset, field, true) {
                    total += 1;
                    everything.insert(d);
                }
            }
            let mut images = BTreeSet::new();
            let mut produced = 0u64;
            for blocks in set_compositions(&labels) {
                let mut pieces = Vec::new();
                for b in &blocks {
                    let mut atoms = Vec::new();
                    for poset in Poset::all_on(b)? {
                        atoms.extend(atomic_on(&poset, field)?);
                    }
                    pieces.push(atoms);
                }
                for d in concatenations(&pieces)? {
                    produced += 1;
                    let back: Vec<Vec<String>> = d
                        .atomic_factorization()?
                        .into_iter()
                        .map(|(b, _)| b)
                        .collect();
                    if back != blocks && poset_witness.is_none() {
                        poset_witness =
                            Some(format!("{d} refactors as {back:?}, built from {blocks:?}"));
                    }
                    images.insert(d);
                }
            }
            if (images != everything || produced != total) && poset_witness.is_none() {
                poset_witness = Some(format!("n = {n}: {produced} products for {total} diagrams"));
            }
            poset_nn_total = Some(total);
            poset_composition_total = Some(produced);
        }

        rows.push(FreeRow {
            n,
            nn_count: all.len() as u64,
            atomic_count: atomic_counts[n],
            composition_sum,
            poset_nn_total,
            poset_composition_total,
        });
    }

    let mut checks = vec![
        Check::new("composition sums equal |NN|", count_witness),
        Check::new("factorization reassembles", factor_witness),
        Check::new("concatenation is a bijection", bijection_witness),
        Check::new("all posets: set compositions", poset_witness),
    ];
    if engine.is_some() {
        checks.push(Check::new(
            "power sums multiply along factorizations",
            product_witness,
        ));
    }
    Ok(FreeReport {
        field: field.clone(),
        rows,
        checks,
    })
}
