//! Finite posets on string-labeled ground sets.
//!
//! Elements are stored in a canonical linear extension: the topological order
//! that always takes the smallest available label (labels that parse as
//! integers compare numerically and come before all others). The canonical
//! order depends only on the labels and the relation, so equal posets have
//! identical internal layouts.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Total order on labels used for canonical layouts and sorted ground sets.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Sort and deduplicate labels under [`label_cmp`].
pub fn sorted_labels<I, S>(labels: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut v: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
    v.sort_by(|a, b| label_cmp(a, b));
    v.dedup();
    v
}

#[derive(Clone)]
pub struct Poset(Arc<PosetData>);

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PosetData {
    labels: Vec<String>,
    lt: Vec<bool>,
}

#[derive(PartialEq, Eq)]
struct Key<'a>(&'a str, usize);

impl PartialOrd for Key<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        label_cmp(self.0, other.0).then(self.1.cmp(&other.1))
    }
}

impl Poset {
    pub fn empty() -> Poset {
        Poset::build(Vec::new(), Vec::new()).expect("empty poset")
    }

    /// The chain 1 ≺ 2 ≺ … ≺ n.
    pub fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Poset::linear(&labels).expect("distinct labels")
    }

    /// The linear order listing `labels` from bottom to top.
    pub fn linear<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        let covers: Vec<(&str, &str)> = labels
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Poset::from_covers(labels, &covers)
    }

    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        Poset::from_covers::<S, &str>(labels, &[])
    }

    /// Poset generated by the given relations (any set whose transitive closure is the order).
    pub fn from_covers<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        covers: &[(T, T)],
    ) -> Result<Poset> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for (a, b) in covers {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.into()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.into()))?;
            if i == j {
                return Err(Error::CycleDetected(a.into()));
            }
            rel[i * n + j] = true;
        }
        transitive_closure(&mut rel, n);
        if let Some(i) = (0..n).find(|&i| rel[i * n + i]) {
            return Err(Error::CycleDetected(labels[i].clone()));
        }
        Poset::build(labels, rel)
    }

    /// Canonicalize a closed, irreflexive, antisymmetric relation.
    fn build(labels: Vec<String>, rel: Vec<bool>) -> Result<Poset> {
        let n = labels.len();
        let mut indeg: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| rel[i * n + j]).count())
            .collect();
        let mut ready: BTreeSet<Key> = (0..n)
            .filter(|&j| indeg[j] == 0)
            .map(|j| Key(&labels[j], j))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Key(_, i)) = ready.pop_first() {
            order.push(i);
            for j in 0..n {
                if rel[i * n + j] {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.insert(Key(&labels[j], j));
                    }
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|i| !order.contains(i)).unwrap();
            return Err(Error::CycleDetected(labels[stuck].clone()));
        }
        let new_labels: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
        let mut lt = vec![false; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                lt[a * n + b] = rel[i * n + j];
            }
        }
        Ok(Poset(Arc::new(PosetData {
            labels: new_labels,
            lt,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    /// Labels in canonical order.
    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    /// The ground set sorted by [`label_cmp`].
    pub fn ground_set(&self) -> Vec<String> {
        sorted_labels(self.labels())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// i ≺ j (canonical indices).
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.0.lt[i * self.len() + j]
    }

    /// i ⪯ j.
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn lt_labels(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.lt(self.require_index(a)?, self.require_index(b)?))
    }

    /// All strict pairs (i, j), i ≺ j, sorted by (i, j) in canonical order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) {
                    v.push((i, j));
                }
            }
        }
        v
    }

    /// Cover relations of the Hasse diagram (canonical indices).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(i, j)| (self.label(i).to_string(), self.label(j).to_string()))
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.lt(i, j)))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// The induced order on a subset of the ground set.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset> {
        let mut idx = Vec::with_capacity(subset.len());
        for s in subset {
            let i = self.require_index(s.as_ref())?;
            if idx.contains(&i) {
                return Err(Error::DuplicateElement(s.as_ref().to_string()));
            }
            idx.push(i);
        }
        idx.sort_unstable();
        let m = idx.len();
        let labels: Vec<String> = idx.iter().map(|&i| self.label(i).to_string()).collect();
        let mut rel = vec![false; m * m];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                rel[a * m + b] = self.lt(i, j);
            }
        }
        Poset::build(labels, rel)
    }

    /// The concatenation P·Q: every element of P lies below every element of Q.
    pub fn concat(&self, other: &Poset) -> Result<Poset> {
        if let Some(l) = self.labels().iter().find(|l| other.contains(l)) {
            return Err(Error::OverlappingGroundSets(l.clone()));
        }
        let (a, b) = (self.len(), other.len());
        let n = a + b;
        let mut labels = self.labels().to_vec();
        labels.extend(other.labels().iter().cloned());
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = match (i < a, j < a) {
                    (true, true) => self.lt(i, j),
                    (false, false) => other.lt(i - a, j - a),
                    (true, false) => true,
                    (false, true) => false,
                };
            }
        }
        Poset::build(labels, rel)
    }

    /// Every ordered pair (S, T) of nonempty sets with P = P|_S · P|_T.
    ///
    /// Such an S is a down-set lying entirely below its complement, hence a
    /// prefix of every linear extension; the prefixes of the canonical order are
    /// the candidates tested.
    pub fn splits(&self) -> Vec<(Vec<String>, Vec<String>)> {
        let n = self.len();
        let mut out = Vec::new();
        for k in 1..n {
            if (0..k).all(|i| (k..n).all(|j| self.lt(i, j))) {
                out.push((
                    sorted_labels(&self.labels()[..k]),
                    sorted_labels(&self.labels()[k..]),
                ));
            }
        }
        out
    }

    /// Whether P = P|_S · P|_T for the given bipartition.
    pub fn is_split(&self, s: &[String], t: &[String]) -> Result<bool> {
        let si: Vec<usize> = s
            .iter()
            .map(|l| self.require_index(l))
            .collect::<Result<_>>()?;
        let ti: Vec<usize> = t
            .iter()
            .map(|l| self.require_index(l))
            .collect::<Result<_>>()?;
        check_partition(self, s, t)?;
        Ok(si.iter().all(|&i| ti.iter().all(|&j| self.lt(i, j))))
    }

    /// All linear extensions, lexicographic in canonical positions.
    pub fn linear_extensions(&self) -> Vec<Vec<String>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut used = vec![false; n];
        let mut current = Vec::with_capacity(n);
        self.extend_linear(&mut used, &mut current, &mut out);
        out.into_iter()
            .map(|ext: Vec<usize>| ext.iter().map(|&i| self.label(i).to_string()).collect())
            .collect()
    }

    fn extend_linear(
        &self,
        used: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.len();
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if used[i] || (0..n).any(|j| !used[j] && self.lt(j, i)) {
                continue;
            }
            used[i] = true;
            current.push(i);
            self.extend_linear(used, current, out);
            current.pop();
            used[i] = false;
        }
    }

    /// Transport along a relabeling of the ground set.
    pub fn relabel(&self, map: &HashMap<String, String>) -> Result<Poset> {
        let labels = apply_bijection(self.labels(), map)?;
        Poset::build(labels, self.0.lt.clone())
    }

    /// Every poset on the given labels (labeled, not up to isomorphism).
    ///
    /// Built one element at a time: the new element is placed above a down-set D
    /// and below an up-set U of an existing poset, with D entirely below U.
    pub fn all_on<S: AsRef<str>>(labels: &[S]) -> Result<Vec<Poset>> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        if n > 6 {
            return Err(Error::GroundSetTooLarge { size: n, limit: 6 });
        }
        let mut rels: Vec<Vec<bool>> = vec![Vec::new()];
        for k in 0..n {
            let mut next = Vec::new();
            for rel in &rels {
                let lt = |i: usize, j: usize| rel[i * k + j];
                for down in 0u32..(1 << k) {
                    let in_d = |i: usize| down >> i & 1 == 1;
                    if !(0..k).all(|i| !in_d(i) || (0..k).all(|j| !lt(j, i) || in_d(j))) {
                        continue;
                    }
                    for up in 0u32..(1 << k) {
                        if up & down != 0 {
                            continue;
                        }
                        let in_u = |i: usize| up >> i & 1 == 1;
                        if !(0..k).all(|i| !in_u(i) || (0..k).all(|j| !lt(i, j) || in_u(j))) {
                            continue;
                        }
                        if !(0..k).all(|d| !in_d(d) || (0..k).all(|u| !in_u(u) || lt(d, u))) {
                            continue;
                        }
                        let m = k + 1;
                        let mut r = vec![false; m * m];
                        for i in 0..k {
                            for j in 0..k {
                                r[i * m + j] = lt(i, j);
                            }
                            r[i * m + k] = in_d(i);
                            r[k * m + i] = in_u(i);
                        }
                        next.push(r);
                    }
                }
            }
            rels = next;
        }
        rels.into_iter()
            .map(|r| Poset::build(labels.clone(), r))
            .collect()
    }

    /// Level-by-level text rendering of the Hasse diagram, top level first.
    pub fn render_hasse(&self) -> String {
        let n = self.len();
        let mut rank = vec![0usize; n];
        for j in 0..n {
            for i in 0..j {
                if self.lt(i, j) {
                    rank[j] = rank[j].max(rank[i] + 1);
                }
            }
        }
        let top = rank.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        if n == 0 {
            out.push_str("(empty poset)\n");
            return out;
        }
        for r in (0..=top).rev() {
            let row: Vec<&str> = (0..n)
                .filter(|&i| rank[i] == r)
                .map(|i| self.label(i))
                .collect();
            out.push_str(&format!("level {r}: {}\n", row.join("  ")));
        }
        let covers: Vec<String> = self
            .cover_labels()
            .iter()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect();
        out.push_str(&format!("covers: {}\n", covers.join(" ")));
        out
    }
}

/// Apply a label map that must be a bijection on `labels`.
pub fn apply_bijection(labels: &[String], map: &HashMap<String, String>) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(labels.len());
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        let t = map
            .get(l)
            .ok_or_else(|| Error::NotABijection(format!("no image for {l}")))?;
        if !seen.insert(t.clone()) {
            return Err(Error::NotABijection(format!("{t} is hit twice")));
        }
        out.push(t.clone());
    }
    if map.len() != labels.len() {
        return Err(Error::NotABijection("map has extra entries".into()));
    }
    Ok(out)
}

/// S and T must be disjoint with union the ground set of `poset`.
pub fn check_partition(poset: &Poset, s: &[String], t: &[String]) -> Result<()> {
    let mut all: Vec<&String> = s.iter().chain(t).collect();
    all.sort();
    let before = all.len();
    all.dedup();
    let describe = || format!("{} | {}", s.join(","), t.join(","));
    if all.len() != before || all.len() != poset.len() {
        return Err(Error::NotAPartition(describe()));
    }
    for l in &all {
        if !poset.contains(l) {
            return Err(Error::NotAPartition(describe()));
        }
    }
    Ok(())
}

fn transitive_closure(rel: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Poset {}

impl PartialOrd for Poset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poset {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl std::hash::Hash for Poset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
        self.0.lt.hash(state);
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_labels()
            .iter()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect();
        write!(
            f,
            "Poset[{}; {}]",
            self.labels().join(","),
            covers.join(" ")
        )
    }
}
