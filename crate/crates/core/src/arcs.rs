//! Labeled arc diagrams on a poset: (GF(q), P)-set partitions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::{check_partition, sorted_labels, Poset};

/// An arc src ⌢ dst with a nonzero field label. Endpoints are canonical
/// indices into the owning poset; the label is a field element code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledArc {
    pub src: usize,
    pub dst: usize,
    pub label: u32,
}

impl LabeledArc {
    pub fn new(src: usize, dst: usize, label: u32) -> LabeledArc {
        LabeledArc { src, dst, label }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.src, self.dst)
    }
}

#[derive(Clone)]
pub struct ArcDiagram {
    poset: Poset,
    field: Field,
    arcs: Vec<LabeledArc>,
}

/// Whether two distinct arc positions may coexist in one diagram.
fn positions_compatible(
    p: &Poset,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
    nonnesting: bool,
) -> bool {
    if (i, j) == (k, l) {
        return false;
    }
    if i == k && (p.lt(j, l) || p.lt(l, j)) {
        return false;
    }
    if j == l && (p.lt(i, k) || p.lt(k, i)) {
        return false;
    }
    if nonnesting && (nests(p, (i, j), (k, l)) || nests(p, (k, l), (i, j))) {
        return false;
    }
    true
}

/// (k,l) lies strictly inside (i,j): i ≺ k ≺ l ≺ j.
fn nests(p: &Poset, (i, j): (usize, usize), (k, l): (usize, usize)) -> bool {
    p.lt(i, k) && p.lt(l, j)
}

/// (k,l) ≠ (i,j) with i ⪯ k ≺ l ⪯ j.
pub(crate) fn weakly_inside(p: &Poset, (i, j): (usize, usize), (k, l): (usize, usize)) -> bool {
    (i, j) != (k, l) && p.le(i, k) && p.le(l, j)
}

impl ArcDiagram {
    pub fn empty(poset: &Poset, field: &Field) -> ArcDiagram {
        ArcDiagram {
            poset: poset.clone(),
            field: field.clone(),
            arcs: Vec::new(),
        }
    }

    /// Check every diagram invariant and build the diagram.
    pub fn validate(poset: &Poset, field: &Field, arcs: &[LabeledArc]) -> Result<ArcDiagram> {
        let n = poset.len();
        let name = |i: usize| poset.label(i).to_string();
        for a in arcs {
            if a.src >= n || a.dst >= n {
                return Err(Error::UnknownElement(format!("index {}", a.src.max(a.dst))));
            }
            if !poset.lt(a.src, a.dst) {
                return Err(Error::ArcNotComparable(name(a.src), name(a.dst)));
            }
            if a.label == 0 {
                return Err(Error::ZeroLabel(name(a.src), name(a.dst)));
            }
            if a.label >= field.q() {
                return Err(Error::InvalidElement(format!("label code {}", a.label)));
            }
        }
        for (x, a) in arcs.iter().enumerate() {
            for b in &arcs[x + 1..] {
                let (i, j) = a.pair();
                let (k, l) = b.pair();
                if (i, j) == (k, l) {
                    return Err(Error::DuplicateArc(name(i), name(j)));
                }
                let witness = if i == k && poset.lt(j, l) {
                    Some((i, j, l))
                } else if i == k && poset.lt(l, j) {
                    Some((i, l, j))
                } else if j == l && poset.lt(i, k) {
                    Some((i, k, j))
                } else if j == l && poset.lt(k, i) {
                    Some((k, i, j))
                } else {
                    None
                };
                if let Some((x, y, z)) = witness {
                    return Err(Error::PartitionConditionViolated(name(x), name(y), name(z)));
                }
            }
        }
        let mut arcs = arcs.to_vec();
        arcs.sort();
        Ok(ArcDiagram {
            poset: poset.clone(),
            field: field.clone(),
            arcs,
        })
    }

    /// Build from (from, to, label code) triples given by element labels.
    pub fn from_labels(
        poset: &Poset,
        field: &Field,
        arcs: &[(&str, &str, u32)],
    ) -> Result<ArcDiagram> {
        let mut v = Vec::with_capacity(arcs.len());
        for &(a, b, c) in arcs {
            v.push(LabeledArc::new(
                poset.require_index(a)?,
                poset.require_index(b)?,
                c,
            ));
        }
        ArcDiagram::validate(poset, field, &v)
    }

    /// Trusted constructor for arc sets already known to be valid.
    pub(crate) fn from_sorted(poset: &Poset, field: &Field, arcs: Vec<LabeledArc>) -> ArcDiagram {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        ArcDiagram {
            poset: poset.clone(),
            field: field.clone(),
            arcs,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Arcs sorted by (src, dst, label) in canonical order.
    pub fn arcs(&self) -> &[LabeledArc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Label of the arc at position (i, j), if present.
    pub fn label_at(&self, i: usize, j: usize) -> Option<u32> {
        self.arcs
            .iter()
            .find(|a| a.src == i && a.dst == j)
            .map(|a| a.label)
    }

    /// Arcs as (from, to, label code) with element labels.
    pub fn label_triples(&self) -> Vec<(String, String, u32)> {
        self.arcs
            .iter()
            .map(|a| {
                (
                    self.poset.label(a.src).to_string(),
                    self.poset.label(a.dst).to_string(),
                    a.label,
                )
            })
            .collect()
    }

    pub fn is_nonnesting(&self) -> bool {
        self.arcs.iter().all(|a| {
            self.arcs
                .iter()
                .all(|b| !nests(&self.poset, a.pair(), b.pair()))
        })
    }

    fn require_nonnesting(&self) -> Result<()> {
        if self.is_nonnesting() {
            Ok(())
        } else {
            Err(Error::NotNonnesting)
        }
    }

    /// Keep the arcs with no other arc of the diagram inside them.
    pub fn sml(&self) -> ArcDiagram {
        let keep = self
            .arcs
            .iter()
            .filter(|a| {
                !self
                    .arcs
                    .iter()
                    .any(|b| weakly_inside(&self.poset, a.pair(), b.pair()))
            })
            .copied()
            .collect();
        ArcDiagram::from_sorted(&self.poset, &self.field, keep)
    }

    /// Keep the arcs with no other arc of the diagram around them.
    pub fn big(&self) -> ArcDiagram {
        let keep = self
            .arcs
            .iter()
            .filter(|a| {
                !self
                    .arcs
                    .iter()
                    .any(|b| weakly_inside(&self.poset, b.pair(), a.pair()))
            })
            .copied()
            .collect();
        ArcDiagram::from_sorted(&self.poset, &self.field, keep)
    }

    /// Whether every arc of `self` is an arc of `other` (same poset).
    pub fn is_subdiagram_of(&self, other: &ArcDiagram) -> bool {
        self.arcs
            .iter()
            .all(|a| other.arcs.binary_search(a).is_ok())
    }

    /// The arcs with both ends in `subset`, as a diagram on the restricted poset.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<ArcDiagram> {
        let sub = self.poset.restrict(subset)?;
        let mut arcs = Vec::new();
        for a in &self.arcs {
            let (x, y) = (
                sub.index_of(self.poset.label(a.src)),
                sub.index_of(self.poset.label(a.dst)),
            );
            if let (Some(x), Some(y)) = (x, y) {
                arcs.push(LabeledArc::new(x, y, a.label));
            }
        }
        arcs.sort();
        Ok(ArcDiagram::from_sorted(&sub, &self.field, arcs))
    }

    /// Combine diagrams living on restrictions of `ambient` to disjoint sets.
    pub fn disjoint_union(&self, other: &ArcDiagram, ambient: &Poset) -> Result<ArcDiagram> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if let Some(l) = self.poset.labels().iter().find(|l| other.poset.contains(l)) {
            return Err(Error::OverlappingGroundSets(l.clone()));
        }
        let mut arcs = Vec::with_capacity(self.len() + other.len());
        for d in [self, other] {
            for (a, b, c) in d.label_triples() {
                arcs.push(LabeledArc::new(
                    ambient.require_index(&a)?,
                    ambient.require_index(&b)?,
                    c,
                ));
            }
        }
        ArcDiagram::validate(ambient, &self.field, &arcs)
    }

    /// Relabel along a bijection of the ground set.
    pub fn relabel(&self, map: &HashMap<String, String>) -> Result<ArcDiagram> {
        let poset = self.poset.relabel(map)?;
        let mut arcs = Vec::with_capacity(self.len());
        for (a, b, c) in self.label_triples() {
            arcs.push(LabeledArc::new(
                poset.require_index(&map[&a])?,
                poset.require_index(&map[&b])?,
                c,
            ));
        }
        arcs.sort();
        Ok(ArcDiagram::from_sorted(&poset, &self.field, arcs))
    }

    /// Pairs (i⌢k, j⌢l) with i < j < k < l; linear orders only.
    pub fn crossing_set(&self) -> Result<Vec<(LabeledArc, LabeledArc)>> {
        if !self.poset.is_linear() {
            return Err(Error::NotLinearOrder);
        }
        let mut out = Vec::new();
        for a in &self.arcs {
            for b in &self.arcs {
                if a.src < b.src && b.src < a.dst && a.dst < b.dst {
                    out.push((*a, *b));
                }
            }
        }
        Ok(out)
    }

    /// Count of i < j < k < l with j⌢k ∈ ν (= self) and i⌢l ∈ η; linear orders only.
    pub fn nst(&self, eta: &ArcDiagram) -> Result<usize> {
        if !self.poset.is_linear() {
            return Err(Error::NotLinearOrder);
        }
        if self.poset != eta.poset {
            return Err(Error::PosetMismatch);
        }
        let mut count = 0;
        for inner in &self.arcs {
            for outer in &eta.arcs {
                if outer.src < inner.src && inner.dst < outer.dst {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// The nonnesting diagrams on P|_S that contain every arc of self inside S and
    /// whose arcs all lie under some arc of self; computed by filtering NN(P|_S, q).
    pub fn proj<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<ArcDiagram>> {
        self.require_nonnesting()?;
        let here = self.restrict(subset)?;
        let sub = here.poset().clone();
        // positions of P|_S covered by some arc of self, in P's order
        let covered = |x: usize, y: usize| -> bool {
            let i = self.poset.index_of(sub.label(x)).unwrap();
            let j = self.poset.index_of(sub.label(y)).unwrap();
            self.arcs
                .iter()
                .any(|a| self.poset.le(a.src, i) && self.poset.le(j, a.dst))
        };
        Ok(enumerate(&sub, &self.field, true)
            .into_iter()
            .filter(|nu| here.is_subdiagram_of(nu) && nu.arcs.iter().all(|a| covered(a.src, a.dst)))
            .collect())
    }

    /// No split (S, T) of the poset with every arc inside S or inside T.
    pub fn is_atomic(&self) -> Result<bool> {
        self.require_nonnesting()?;
        Ok(!self.poset.is_empty() && self.compatible_cuts().is_empty())
    }

    /// Sizes k such that the first k canonical elements split the poset and no arc crosses the cut.
    fn compatible_cuts(&self) -> Vec<usize> {
        let n = self.poset.len();
        (1..n)
            .filter(|&k| {
                (0..k).all(|i| (k..n).all(|j| self.poset.lt(i, j)))
                    && self.arcs.iter().all(|a| (a.src < k) == (a.dst < k))
            })
            .collect()
    }

    /// The unique finest factorization into atomic pieces along poset splits.
    pub fn atomic_factorization(&self) -> Result<Vec<(Vec<String>, ArcDiagram)>> {
        self.require_nonnesting()?;
        let n = self.poset.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut bounds = vec![0];
        bounds.extend(self.compatible_cuts());
        bounds.push(n);
        let mut out = Vec::new();
        for w in bounds.windows(2) {
            let block = sorted_labels(&self.poset.labels()[w[0]..w[1]]);
            let piece = self.restrict(&block)?;
            out.push((block, piece));
        }
        Ok(out)
    }

    /// Concatenate factors (each a diagram on its own poset) left to right.
    pub fn concatenate(factors: &[ArcDiagram]) -> Result<ArcDiagram> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Unsupported("concatenation of no factors".into()))?;
        let mut poset = Poset::empty();
        for f in factors {
            poset = poset.concat(f.poset())?;
        }
        let mut arcs = Vec::new();
        for f in factors {
            if f.field != first.field {
                return Err(Error::FieldMismatch);
            }
            for (a, b, c) in f.label_triples() {
                arcs.push(LabeledArc::new(
                    poset.require_index(&a)?,
                    poset.require_index(&b)?,
                    c,
                ));
            }
        }
        arcs.sort();
        Ok(ArcDiagram::from_sorted(&poset, &first.field, arcs))
    }

    /// Text rendering over a linear extension (canonical order when `extension` is None).
    pub fn render_ascii(&self, extension: Option<&[String]>) -> Result<String> {
        let order = self.extension_positions(extension)?;
        let labels: Vec<&str> = order.iter().map(|&i| self.poset.label(i)).collect();
        let width = labels.iter().map(|l| l.len()).max().unwrap_or(1) + 3;
        let col = |i: usize| order.iter().position(|&x| x == i).unwrap() * width + width / 2;
        let total = labels.len() * width;
        let mut rows = Vec::new();
        let mut arcs = self.arcs.clone();
        arcs.sort_by(|a, b| {
            let span = |x: &LabeledArc| col(x.dst).abs_diff(col(x.src));
            span(b).cmp(&span(a)).then(a.cmp(b))
        });
        for a in &arcs {
            let (lo, hi) = {
                let (x, y) = (col(a.src), col(a.dst));
                (x.min(y), x.max(y))
            };
            let mut line: Vec<char> = vec![' '; total];
            for c in line.iter_mut().take(hi + 1).skip(lo) {
                *c = '-';
            }
            line[lo] = '+';
            line[hi] = '+';
            let tag: Vec<char> = self.field.format(a.label).chars().collect();
            let mid = (lo + hi) / 2;
            let start = mid.saturating_sub(tag.len() / 2).max(lo + 1);
            for (k, ch) in tag.iter().enumerate() {
                if start + k < hi {
                    line[start + k] = *ch;
                }
            }
            rows.push(line.into_iter().collect::<String>().trim_end().to_string());
        }
        let mut node_row = String::new();
        for l in &labels {
            let pad = width - l.len();
            let left = pad / 2;
            node_row.push_str(&" ".repeat(left));
            node_row.push_str(l);
            node_row.push_str(&" ".repeat(pad - left));
        }
        rows.push(node_row.trim_end().to_string());
        Ok(rows.join("\n") + "\n")
    }

    /// Standalone LaTeX (TikZ) picture in the usual node-and-arc style.
    pub fn render_latex(&self, extension: Option<&[String]>) -> Result<String> {
        let order = self.extension_positions(extension)?;
        let x = |i: usize| order.iter().position(|&v| v == i).unwrap();
        let mut s = String::from(
            "\\documentclass{standalone}\n\\usepackage{tikz}\n\\begin{document}\n\\begin{tikzpicture}\n",
        );
        for (pos, &i) in order.iter().enumerate() {
            s.push_str(&format!(
                "  \\fill ({:.1},0) circle (.1) node[below] {{${}$}};\n",
                pos as f64 * 0.5,
                self.poset.label(i)
            ));
        }
        for a in &self.arcs {
            let (u, v) = (x(a.src), x(a.dst));
            s.push_str(&format!(
                "  \\draw ({:.1},0) to [out=75, in=105] node[above] {{${}$}} ({:.1},0);\n",
                u as f64 * 0.5,
                self.field.format(a.label),
                v as f64 * 0.5
            ));
        }
        s.push_str("\\end{tikzpicture}\n\\end{document}\n");
        Ok(s)
    }

    fn extension_positions(&self, extension: Option<&[String]>) -> Result<Vec<usize>> {
        let n = self.poset.len();
        let order: Vec<usize> = match extension {
            None => (0..n).collect(),
            Some(ext) => ext
                .iter()
                .map(|l| self.poset.require_index(l))
                .collect::<Result<_>>()?,
        };
        let mut seen = vec![false; n];
        for (pos, &i) in order.iter().enumerate() {
            if seen[i] || order[pos + 1..].iter().any(|&j| self.poset.lt(j, i)) {
                return Err(Error::Parse("not a linear extension".into()));
            }
            seen[i] = true;
        }
        if order.len() != n {
            return Err(Error::Parse("not a linear extension".into()));
        }
        Ok(order)
    }
}

impl PartialEq for ArcDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.arcs == other.arcs && self.poset == other.poset && self.field == other.field
    }
}

impl Eq for ArcDiagram {}

impl PartialOrd for ArcDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArcDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arcs
            .cmp(&other.arcs)
            .then_with(|| self.poset.cmp(&other.poset))
    }
}

impl std::hash::Hash for ArcDiagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.arcs.hash(state);
        self.poset.hash(state);
    }
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b, c)) in self.label_triples().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}-{b}:{}", self.field.format(*c))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

struct Walker<'a> {
    poset: &'a Poset,
    q: u32,
    fixed: &'a [LabeledArc],
    cands: &'a [(usize, usize)],
    nonnesting: bool,
    chosen: Vec<(usize, usize)>,
    labels: Vec<u32>,
    out: Vec<Vec<LabeledArc>>,
}

impl Walker<'_> {
    // pre-order walk over "next chosen position" keeps each subset exactly once
    fn walk(&mut self, start: usize) {
        let mut arcs: Vec<LabeledArc> = self.fixed.to_vec();
        arcs.extend(
            self.chosen
                .iter()
                .zip(&self.labels)
                .map(|(&(i, j), &c)| LabeledArc::new(i, j, c)),
        );
        arcs.sort();
        self.out.push(arcs);
        for t in start..self.cands.len() {
            let c = self.cands[t];
            if !self
                .chosen
                .iter()
                .all(|&d| positions_compatible(self.poset, d, c, self.nonnesting))
            {
                continue;
            }
            self.chosen.push(c);
            for a in 1..self.q {
                self.labels.push(a);
                self.walk(t + 1);
                self.labels.pop();
            }
            self.chosen.pop();
        }
    }
}

/// All arc sets containing `fixed` and otherwise using only `candidates`
/// positions, each arc labeled by a nonzero element. `fixed` must already be valid.
pub fn extend_arcs(
    poset: &Poset,
    field: &Field,
    fixed: &[LabeledArc],
    candidates: &[(usize, usize)],
    nonnesting: bool,
) -> Vec<Vec<LabeledArc>> {
    let candidates: Vec<(usize, usize)> = candidates
        .iter()
        .copied()
        .filter(|&c| {
            fixed
                .iter()
                .all(|f| positions_compatible(poset, f.pair(), c, nonnesting))
        })
        .collect();
    let mut walker = Walker {
        poset,
        q: field.q(),
        fixed,
        cands: &candidates,
        nonnesting,
        chosen: Vec::new(),
        labels: Vec::new(),
        out: Vec::new(),
    };
    walker.walk(0);
    let mut out = walker.out;
    out.sort();
    out
}

/// Π(P, q) (all diagrams) or NN(P, q) (nonnesting only), sorted by arc list.
pub fn enumerate(poset: &Poset, field: &Field, nonnesting_only: bool) -> Vec<ArcDiagram> {
    extend_arcs(poset, field, &[], &poset.strict_pairs(), nonnesting_only)
        .into_iter()
        .map(|arcs| ArcDiagram::from_sorted(poset, field, arcs))
        .collect()
}

/// Number of unlabeled diagram shapes with k arcs, for k = 0, 1, …
///
/// |Π(P,q)| (or |NN(P,q)|) is Σ_k shapes[k] (q−1)^k.
pub fn shape_counts(poset: &Poset, nonnesting_only: bool) -> Vec<u64> {
    let two = Field::prime(2).expect("2 is prime");
    let mut counts = Vec::new();
    for arcs in extend_arcs(poset, &two, &[], &poset.strict_pairs(), nonnesting_only) {
        if counts.len() <= arcs.len() {
            counts.resize(arcs.len() + 1, 0);
        }
        counts[arcs.len()] += 1;
    }
    if counts.is_empty() {
        counts.push(0);
    }
    counts
}

/// Evaluate Σ_k shapes[k] (q−1)^k.
pub fn evaluate_shape_polynomial(shapes: &[u64], q: u64) -> u128 {
    shapes
        .iter()
        .enumerate()
        .map(|(k, &c)| c as u128 * ((q - 1) as u128).pow(k as u32))
        .sum()
}

/// Lookup from arc lists to positions in an enumeration.
pub struct DiagramIndex {
    map: HashMap<Vec<LabeledArc>, usize>,
}

impl DiagramIndex {
    pub fn new(diagrams: &[ArcDiagram]) -> DiagramIndex {
        DiagramIndex {
            map: diagrams
                .iter()
                .enumerate()
                .map(|(k, d)| (d.arcs.clone(), k))
                .collect(),
        }
    }

    pub fn get(&self, arcs: &[LabeledArc]) -> Option<usize> {
        self.map.get(arcs).copied()
    }
}

/// S, T must partition the ground set of `poset`.
pub fn require_partition(poset: &Poset, s: &[String], t: &[String]) -> Result<()> {
    check_partition(poset, s, t)
}
