//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every check is an exact equality; the only tolerances are the wall-clock
//! budgets below.

use std::time::{Duration, Instant};

use nnscf::arcs::{enumerate, evaluate_shape_polynomial, shape_counts};
use nnscf::hopf::axioms::check_hopf_axioms;
use nnscf::hopf::coproduct;
use nnscf::hopf::free::free_structure;
use nnscf::supercharacters::{verify_algebra_table, verify_coarsening, verify_sct};
use nnscf::{
    ArcDiagram, Basis, CombinatorialEngine, CycNumber, Engine, Field, FunctionalEngine,
    PatternGroup, Poset, ScfVector, TensorElement,
};

/// Values are exact rationals; nothing is compared approximately.
const VALUE_TOLERANCE: u32 = 0;
const EXAMPLES_BUDGET: Duration = Duration::from_secs(1);
const SCT_BUDGET: Duration = Duration::from_secs(120);
const HOPF_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

fn diagram(poset: &Poset, f: &Field, arcs: &[(&str, &str, u32)]) -> ArcDiagram {
    ArcDiagram::from_labels(poset, f, arcs).unwrap()
}

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent <= budget, || {
        format!("took {spent:.2?}, budget {budget:?}")
    })
}

fn examples() -> Outcome {
    let start = Instant::now();

    // twelve points, one nesting pair on each side of the middle
    let f = gf(7);
    let p12 = Poset::chain(12);
    let eta = diagram(
        &p12,
        &f,
        &[
            ("1", "3", 1),
            ("3", "7", 2),
            ("4", "5", 3),
            ("6", "11", 4),
            ("8", "9", 5),
            ("10", "12", 6),
        ],
    );
    let sml = diagram(
        &p12,
        &f,
        &[("1", "3", 1), ("4", "5", 3), ("8", "9", 5), ("10", "12", 6)],
    );
    let big = diagram(
        &p12,
        &f,
        &[
            ("1", "3", 1),
            ("3", "7", 2),
            ("6", "11", 4),
            ("10", "12", 6),
        ],
    );
    ensure(eta.sml() == sml, || format!("sml = {}", eta.sml()))?;
    ensure(eta.big() == big, || format!("big = {}", eta.big()))?;

    // six-element poset over GF(5): sml of a group element, big of a functional
    let hasse = Poset::from_covers(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("1", "3"),
            ("1", "4"),
            ("2", "6"),
            ("3", "6"),
            ("4", "6"),
            ("5", "6"),
        ],
    )
    .unwrap();
    let f5 = gf(5);
    let group = PatternGroup::new(&hasse, &f5);
    let entries: Vec<(String, String, u32)> =
        [("1", "3", 1), ("1", "6", 2), ("2", "6", 3), ("4", "6", 4)]
            .iter()
            .map(|&(a, b, c)| (a.into(), b.into(), c))
            .collect();
    let g = group
        .element(
            group
                .entries_from_labels(&entries)
                .map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
    let want = diagram(&hasse, &f5, &[("1", "3", 1), ("2", "6", 3), ("4", "6", 4)]);
    ensure(g.sml() == want, || format!("sml(g) = {}", g.sml()))?;
    let lam = group
        .functional(g.raw().to_vec())
        .map_err(|e| e.to_string())?;
    let want = diagram(&hasse, &f5, &[("1", "6", 2), ("2", "6", 3)]);
    ensure(lam.big() == want, || format!("big(λ) = {}", lam.big()))?;

    // projection onto {1,2,3,4} of {1-2:a, 3-5:b} over GF(3)
    let f3 = gf(3);
    let p5 = Poset::chain(5);
    let p4 = Poset::chain(4);
    for a in 1..3 {
        for b in 1..3 {
            let eta = diagram(&p5, &f3, &[("1", "2", a), ("3", "5", b)]);
            let mut got = eta.proj(&labels(4)).map_err(|e| e.to_string())?;
            got.sort();
            let mut want = vec![diagram(&p4, &f3, &[("1", "2", a)])];
            for c in 1..3 {
                want.push(diagram(&p4, &f3, &[("1", "2", a), ("3", "4", c)]));
            }
            want.sort();
            ensure(got == want, || format!("proj of {eta}: {got:?}"))?;
        }
    }

    // power-sum coproducts on the chain 1 < 2 < 3 < 4 split as {1,4} | {2,3}
    let functional = FunctionalEngine::default();
    for p in [2, 3] {
        let f = gf(p);
        let (s, t) = (strs(&["1", "4"]), strs(&["2", "3"]));
        let (ps, pt) = (Poset::linear(&s).unwrap(), Poset::linear(&t).unwrap());
        let one = CycNumber::one(f.p());
        for a in 1..f.q() {
            let x = ScfVector::basis_element(Basis::PowerSum, &diagram(&p4, &f, &[("2", "3", a)]))
                .unwrap();
            let got = coproduct(&functional, &x, &s, &t).map_err(|e| e.to_string())?;
            let mut want = TensorElement::zero(vec![s.clone(), t.clone()], &f, Basis::PowerSum);
            want.add_term(
                vec![
                    ArcDiagram::empty(&ps, &f),
                    diagram(&pt, &f, &[("2", "3", a)]),
                ],
                one.clone(),
            )
            .unwrap();
            ensure(got == want, || format!("q = {p}: Δ p = {got}"))?;

            let x = ScfVector::basis_element(Basis::PowerSum, &diagram(&p4, &f, &[("1", "4", a)]))
                .unwrap();
            let got = coproduct(&functional, &x, &s, &t).map_err(|e| e.to_string())?;
            let left = diagram(&ps, &f, &[("1", "4", a)]);
            let mut want = TensorElement::zero(vec![s.clone(), t.clone()], &f, Basis::PowerSum);
            want.add_term(vec![left.clone(), ArcDiagram::empty(&pt, &f)], one.clone())
                .unwrap();
            for b in 1..f.q() {
                want.add_term(
                    vec![left.clone(), diagram(&pt, &f, &[("2", "3", b)])],
                    CycNumber::from_integer(p as u32, -1),
                )
                .unwrap();
            }
            ensure(got == want, || format!("q = {p}: Δ p = {got}"))?;
        }
    }

    within(EXAMPLES_BUDGET, start)?;
    Ok(format!("{:.2?}", start.elapsed()))
}

fn sct_suite() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(Poset, Field)> = Vec::new();
    for n in 0..=4 {
        for poset in Poset::all_on(&labels(n)).unwrap() {
            cases.push((poset, gf(2)));
        }
    }
    for n in 0..=4 {
        cases.push((Poset::chain(n), gf(3)));
    }
    for (poset, f) in &cases {
        let report = verify_sct(&PatternGroup::new(poset, f)).map_err(|e| e.to_string())?;
        ensure(report.checks.len() == 5, || {
            format!("{} checks", report.checks.len())
        })?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!(
                "{poset:?} q = {}: {} {:?}",
                f.q(),
                c.name,
                c.witness
            ));
        }
    }
    within(SCT_BUDGET, start)?;
    Ok(format!(
        "{} (poset, q) cases, {:.2?}",
        cases.len(),
        start.elapsed()
    ))
}

fn algebra_formulas() -> Outcome {
    let mut checks = 0;
    for n in 0..=4 {
        let group = PatternGroup::new(&Poset::chain(n), &gf(2));
        for c in verify_algebra_table(&group).map_err(|e| e.to_string())? {
            ensure(c.passed, || format!("n = {n}: {} {:?}", c.name, c.witness))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} checks"))
}

fn coarsening() -> Outcome {
    let mut checks = 0;
    for p in [2, 3] {
        for n in 0..=4 {
            let group = PatternGroup::new(&Poset::chain(n), &gf(p));
            for c in verify_coarsening(&group).map_err(|e| e.to_string())? {
                ensure(c.passed, || {
                    format!("n = {n}, q = {p}: {} {:?}", c.name, c.witness)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn hopf_axioms() -> Outcome {
    let start = Instant::now();
    let f = gf(2);
    let ground = labels(3);
    let functional = FunctionalEngine::default();
    let runs: [(Basis, &dyn Engine); 3] = [
        (Basis::Kappa, &CombinatorialEngine),
        (Basis::Chi, &CombinatorialEngine),
        (Basis::PowerSum, &functional),
    ];
    let mut cases = 0;
    let mut witness = None;
    for (basis, engine) in runs {
        let report = check_hopf_axioms(&ground, &f, basis, engine).map_err(|e| e.to_string())?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("{basis}: {} {:?}", c.name, c.witness));
        }
        cases += report.cases;
        witness = witness.or(report.noncommutative_witness);
    }
    let witness = witness.ok_or("no noncommuting pair")?;
    within(HOPF_BUDGET, start)?;
    Ok(format!(
        "{cases} cases, noncommuting pair {witness}, {:.2?}",
        start.elapsed()
    ))
}

fn splits(ground: &[String]) -> Vec<(Vec<String>, Vec<String>)> {
    let n = ground.len();
    (0..1usize << n)
        .map(|m| {
            let s = (0..n)
                .filter(|k| m >> k & 1 == 1)
                .map(|k| ground[k].clone())
                .collect();
            let t = (0..n)
                .filter(|k| m >> k & 1 == 0)
                .map(|k| ground[k].clone())
                .collect();
            (s, t)
        })
        .collect()
}

fn engines_agree() -> Outcome {
    let f = gf(2);
    let functional = FunctionalEngine::default();
    let mut compared = 0;

    // products: P on a prefix of labels, Q on the rest, P·Q of size ≤ 4 linear or ≤ 3 arbitrary
    let mut pairs: Vec<(Poset, Poset)> = Vec::new();
    for total in 0..=4 {
        for k in 0..=total {
            let left: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
            let right: Vec<String> = (k + 1..=total).map(|i| i.to_string()).collect();
            if total <= 3 {
                for p in Poset::all_on(&left).unwrap() {
                    for q in Poset::all_on(&right).unwrap() {
                        pairs.push((p.clone(), q));
                    }
                }
            } else {
                pairs.push((
                    Poset::linear(&left).unwrap(),
                    Poset::linear(&right).unwrap(),
                ));
            }
        }
    }
    for (p, q) in &pairs {
        let ground = p.concat(q).unwrap();
        for x in enumerate(p, &f, true) {
            for y in enumerate(q, &f, true) {
                for basis in Basis::ALL {
                    let a = CombinatorialEngine
                        .product_basis(basis, &x, &y)
                        .map_err(|e| e.to_string())?;
                    let b = functional
                        .product_basis(basis, &x, &y)
                        .map_err(|e| e.to_string())?;
                    let a = ScfVector::from_terms(ground.labels(), &f, basis, a).unwrap();
                    let b = ScfVector::from_terms(ground.labels(), &f, basis, b).unwrap();
                    ensure(a == b, || format!("{basis}: {x} · {y}: {a} vs {b}"))?;
                    compared += 1;
                }
            }
        }
    }

    // coproducts in the κ and χ bases
    let mut posets = vec![Poset::chain(4)];
    for n in 0..=3 {
        posets.extend(Poset::all_on(&labels(n)).unwrap());
    }
    for poset in &posets {
        for (s, t) in splits(poset.labels()) {
            for eta in enumerate(poset, &f, true) {
                for basis in [Basis::Kappa, Basis::Chi] {
                    let x = ScfVector::basis_element(basis, &eta).unwrap();
                    let a =
                        coproduct(&CombinatorialEngine, &x, &s, &t).map_err(|e| e.to_string())?;
                    let b = coproduct(&functional, &x, &s, &t).map_err(|e| e.to_string())?;
                    ensure(a == b, || {
                        format!("{basis}: Δ_{s:?},{t:?} of {eta}: {a} vs {b}")
                    })?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} comparisons"))
}

fn freeness() -> Outcome {
    let mut rows = Vec::new();
    for p in [2, 3] {
        let report =
            free_structure(4, &gf(p), Some(&CombinatorialEngine)).map_err(|e| e.to_string())?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("q = {p}: {} {:?}", c.name, c.witness));
        }
        let atomic: Vec<u64> = report.rows.iter().map(|r| r.atomic_count).collect();
        rows.push(format!("q = {p} atomic {atomic:?}"));
    }
    Ok(rows.join("; "))
}

/// Labeled nonnesting set partitions of the chain on n points by direct search
/// over arc subsets, weighted by (q−1)^{#arcs}.
fn brute_nonnesting(n: usize, q: u64, nonnesting: bool) -> u128 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut total = 0u128;
    for mask in 0u32..(1 << pairs.len()) {
        let arcs: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| pairs[k])
            .collect();
        let mut starts = vec![false; n];
        let mut ends = vec![false; n];
        let mut ok = true;
        for &(i, j) in &arcs {
            ok &= !starts[i] && !ends[j];
            starts[i] = true;
            ends[j] = true;
        }
        if nonnesting {
            for &(i, j) in &arcs {
                for &(k, l) in &arcs {
                    ok &= !(i < k && l < j);
                }
            }
        }
        if ok {
            total += ((q - 1) as u128).pow(arcs.len() as u32);
        }
    }
    total
}

fn counting() -> Outcome {
    for n in 0..=5 {
        let chain = Poset::chain(n);
        let shapes = shape_counts(&chain, true);
        for p in [2, 3, 5] {
            let listed = enumerate(&chain, &gf(p), true).len() as u128;
            let polynomial = evaluate_shape_polynomial(&shapes, p);
            let brute = brute_nonnesting(n, p, true);
            ensure(listed == polynomial && polynomial == brute, || {
                format!(
                    "n = {n}, q = {p}: listed {listed}, polynomial {polynomial}, search {brute}"
                )
            })?;
        }
    }
    let catalan: Vec<u64> = (0..=5)
        .map(|n| shape_counts(&Poset::chain(n), true).iter().sum())
        .collect();
    ensure(catalan == [1, 1, 2, 5, 14, 42], || {
        format!("shape counts {catalan:?}")
    })?;
    let all = enumerate(&Poset::chain(4), &gf(2), false).len() as u128;
    ensure(all == 15 && brute_nonnesting(4, 2, false) == 15, || {
        format!("|Π(4,2)| = {all}")
    })?;
    Ok(format!("Catalan {catalan:?}, |Π(4,2)| = {all}"))
}

#[test]
fn acceptance() {
    assert_eq!(VALUE_TOLERANCE, 0);
    let criteria: [Criterion; 8] = [
        ("worked examples", examples),
        ("supercharacter theory axioms", sct_suite),
        ("unitriangular algebra-group formulas", algebra_formulas),
        ("coarsening to pattern groups", coarsening),
        ("Hopf monoid axioms", hopf_axioms),
        ("combinatorial and functional engines agree", engines_agree),
        ("freeness", freeness),
        ("counting and polynomiality", counting),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "criterion {}: PASS {name} ({detail}) [{:.2?}]",
                k + 1,
                start.elapsed()
            ),
            Err(witness) => {
                println!(
                    "criterion {}: FAIL {name}: {witness} [{:.2?}]",
                    k + 1,
                    start.elapsed()
                );
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
