use std::collections::{HashMap, HashSet};

use nnscf::arcs::enumerate;
use nnscf::pattern::SuperclassPartition;
use nnscf::{AlgebraElement, ArcDiagram, Field, Functional, GroupElement, PatternGroup, Poset};
use proptest::prelude::*;

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn hasse6() -> Poset {
    Poset::from_covers(
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
    .unwrap()
}

fn panel() -> Vec<Poset> {
    let mut out = vec![
        Poset::empty(),
        Poset::chain(1),
        Poset::chain(2),
        Poset::chain(3),
        Poset::chain(4),
        Poset::antichain(&["1", "2", "3"]).unwrap(),
        Poset::from_covers(&["1", "2", "3"], &[("1", "3"), ("2", "3")]).unwrap(),
        Poset::from_covers(&["1", "2", "3"], &[("1", "2"), ("1", "3")]).unwrap(),
        Poset::from_covers(&["1", "2", "3", "4"], &[("1", "3"), ("1", "4"), ("2", "4")]).unwrap(),
        Poset::from_covers(
            &["1", "2", "3", "4"],
            &[("1", "2"), ("1", "3"), ("2", "4"), ("3", "4")],
        )
        .unwrap(),
    ];
    out.push(hasse6());
    out
}

fn elem(group: &PatternGroup, triples: &[(&str, &str, u32)]) -> GroupElement {
    let t: Vec<(String, String, u32)> = triples
        .iter()
        .map(|&(a, b, c)| (a.into(), b.into(), c))
        .collect();
    group
        .element(group.entries_from_labels(&t).unwrap())
        .unwrap()
}

#[test]
fn hasse6_sml_and_big() {
    // entries a, b, c, e at 13, 16, 26, 46 over GF(5) with labels 1, 2, 3, 4
    let p = hasse6();
    let f = gf(5);
    let group = PatternGroup::new(&p, &f);
    let g = elem(
        &group,
        &[("1", "3", 1), ("1", "6", 2), ("2", "6", 3), ("4", "6", 4)],
    );
    let expected =
        ArcDiagram::from_labels(&p, &f, &[("1", "3", 1), ("2", "6", 3), ("4", "6", 4)]).unwrap();
    assert_eq!(g.sml(), expected);
    let lam = group.functional(g.raw().to_vec()).unwrap();
    let expected = ArcDiagram::from_labels(&p, &f, &[("1", "6", 2), ("2", "6", 3)]).unwrap();
    assert_eq!(lam.big(), expected);
    assert_eq!(group.identity().sml(), ArcDiagram::empty(&p, &f));
    assert_eq!(group.checked_order().unwrap(), 5u64.pow(7));
}

#[test]
fn hasse6_group_partition() {
    let group = PatternGroup::new(&hasse6(), &gf(2));
    assert_eq!(group.elements().unwrap().count(), 128);
    let part = SuperclassPartition::compute(&group).unwrap();
    assert_eq!(part.sizes.iter().sum::<u64>(), 128);
}

#[test]
fn u_eta_zero_pattern_on_twelve_points() {
    let p = Poset::chain(12);
    let f = gf(2);
    let group = PatternGroup::new(&p, &f);
    let eta = ArcDiagram::from_labels(
        &p,
        &f,
        &[
            ("1", "3", 1),
            ("3", "7", 1),
            ("6", "11", 1),
            ("10", "12", 1),
        ],
    )
    .unwrap();
    let forbidden: HashSet<(usize, usize)> = group
        .u_eta_forbidden(&eta)
        .unwrap()
        .into_iter()
        .map(|t| {
            let (i, j) = group.pairs()[t];
            (i + 1, j + 1)
        })
        .collect();
    let mut expected = HashSet::new();
    for (a, b) in [(1, 3), (3, 7), (6, 11), (10, 12)] {
        for i in a..=b {
            for j in i + 1..=b {
                if (i, j) != (a, b) {
                    expected.insert((i, j));
                }
            }
        }
    }
    assert_eq!(forbidden, expected);
    // row 6 vanishes in columns 7..=10 and row 11 in column 12
    for col in 7..=10 {
        assert!(forbidden.contains(&(6, col)));
    }
    assert!(forbidden.contains(&(11, 12)));
    assert!(!forbidden.contains(&(6, 11)));
    assert!(!forbidden.contains(&(2, 4)));
}

#[test]
fn superclass_closed_form_matches_fiber() {
    for poset in panel() {
        for p in [2, 3] {
            let group = PatternGroup::new(&poset, &gf(p));
            if group.checked_order().unwrap() > 1 << 12 {
                continue;
            }
            let mut total = 0u64;
            for nu in enumerate(&poset, &gf(p), true) {
                let fiber = group.superclass_members(&nu).unwrap();
                let closed = group.superclass_closed_form(&nu).unwrap();
                assert_eq!(fiber, closed, "{poset:?} {nu}");
                assert_eq!(
                    group.superclass_size(&nu).unwrap(),
                    (fiber.len() as u64).into()
                );
                total += fiber.len() as u64;
            }
            assert_eq!(total, group.checked_order().unwrap());
        }
    }
}

#[test]
fn orbits_preserve_sml_and_big() {
    for poset in panel() {
        for p in [2, 3] {
            let group = PatternGroup::new(&poset, &gf(p));
            let order = group.checked_order().unwrap();
            if order > 1 << 7 {
                continue;
            }
            for g in group.elements().unwrap() {
                let sml = g.sml();
                for h in group.two_sided_orbit(&g.f_map()).unwrap() {
                    assert_eq!(h.f_inv().sml(), sml);
                }
                let lam = group.functional(g.raw().to_vec()).unwrap();
                let big = lam.big();
                for mu in group.dual_orbit(&lam).unwrap() {
                    assert_eq!(mu.big(), big);
                }
            }
        }
    }
}

#[test]
fn superclasses_are_unions_of_conjugacy_classes() {
    for poset in panel() {
        let group = PatternGroup::new(&poset, &gf(2));
        let part = SuperclassPartition::compute(&group).unwrap();
        for class in group.conjugacy_classes().unwrap() {
            let ids: HashSet<u32> = class.iter().map(|&k| part.class_of[k as usize]).collect();
            assert_eq!(ids.len(), 1);
        }
    }
}

#[test]
fn conjugacy_classes_by_full_conjugation() {
    // every class equals {x h x⁻¹ : x ∈ U} computed with all group elements
    let group = PatternGroup::new(&Poset::chain(3), &gf(3));
    let all: Vec<GroupElement> = group.elements().unwrap().collect();
    for class in group.conjugacy_classes().unwrap() {
        let h = &all[class[0] as usize];
        let mut direct: Vec<u64> = all
            .iter()
            .map(|x| x.mul(h).unwrap().mul(&x.inv()).unwrap().index())
            .collect();
        direct.sort_unstable();
        direct.dedup();
        assert_eq!(direct, class);
    }
}

#[test]
fn u_eta_is_normal_with_expected_index() {
    for poset in panel() {
        let group = PatternGroup::new(&poset, &gf(2));
        let order = group.checked_order().unwrap();
        for eta in enumerate(&poset, &gf(2), true) {
            let sub = group.u_eta_subgroup(&eta).unwrap();
            assert!(group.is_normal_subgroup(&sub).unwrap());
            let index = 1u64 << group.u_eta_forbidden(&eta).unwrap().len();
            assert_eq!(sub.len() as u64 * index, order);
        }
    }
    let p = Poset::chain(3);
    let group = PatternGroup::new(&p, &gf(2));
    let eta = ArcDiagram::from_labels(&p, &gf(2), &[("1", "3", 1)]).unwrap();
    let sub = group.u_eta_subgroup(&eta).unwrap();
    assert_eq!(sub, vec![group.identity(), elem(&group, &[("1", "3", 1)])]);
    let all: Vec<GroupElement> = group.elements().unwrap().collect();
    assert_eq!(
        group
            .u_eta_subgroup(&ArcDiagram::empty(&p, &gf(2)))
            .unwrap(),
        all
    );
}

#[test]
fn not_every_subset_is_normal() {
    let group = PatternGroup::new(&Poset::chain(3), &gf(2));
    let sub = vec![group.identity(), elem(&group, &[("1", "2", 1)])];
    assert!(!group.is_normal_subgroup(&sub).unwrap());
}

#[test]
fn pi_and_sigma_are_homomorphisms() {
    let f = gf(2);
    let left = Poset::linear(&["1", "2"]).unwrap();
    let right = Poset::linear(&["3", "4"]).unwrap();
    let whole = left.concat(&right).unwrap();
    let (gl, gr, gw) = (
        PatternGroup::new(&left, &f),
        PatternGroup::new(&right, &f),
        PatternGroup::new(&whole, &f),
    );
    let all: Vec<GroupElement> = gw.elements().unwrap().collect();
    for g in &all {
        for h in &all {
            let (a, b) = gw.project_pi(&g.mul(h).unwrap(), &gl, &gr).unwrap();
            let (ga, gb) = gw.project_pi(g, &gl, &gr).unwrap();
            let (ha, hb) = gw.project_pi(h, &gl, &gr).unwrap();
            assert_eq!(a, ga.mul(&ha).unwrap());
            assert_eq!(b, gb.mul(&hb).unwrap());
        }
    }
    for g in gl.elements().unwrap() {
        for h in gr.elements().unwrap() {
            let s = gw.embed_sigma(&g, &h).unwrap();
            assert_eq!(gw.project_pi(&s, &gl, &gr).unwrap(), (g.clone(), h));
        }
    }
    let id = gw.project_pi(&gw.identity(), &gl, &gr).unwrap();
    assert_eq!(id, (gl.identity(), gr.identity()));
}

#[test]
fn sigma_is_a_homomorphism_on_any_split() {
    let p = hasse6();
    let f = gf(2);
    let s: Vec<String> = ["1", "3", "6"].iter().map(|x| x.to_string()).collect();
    let t: Vec<String> = ["2", "4", "5"].iter().map(|x| x.to_string()).collect();
    let (ps, pt) = (p.restrict(&s).unwrap(), p.restrict(&t).unwrap());
    let (gs, gt, gp) = (
        PatternGroup::new(&ps, &f),
        PatternGroup::new(&pt, &f),
        PatternGroup::new(&p, &f),
    );
    let left: Vec<GroupElement> = gs.elements().unwrap().collect();
    let one = gt.identity();
    for a in &left {
        for b in &left {
            let lhs = gp.embed_sigma(&a.mul(b).unwrap(), &one).unwrap();
            let rhs = gp
                .embed_sigma(a, &one)
                .unwrap()
                .mul(&gp.embed_sigma(b, &one).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    let bad = Poset::linear(&["1", "3"]).unwrap();
    let g = PatternGroup::new(&bad, &f).identity();
    assert!(gp.embed_sigma(&g, &one).is_err());
}

#[test]
fn orbit_sizes_ut3() {
    let p = Poset::chain(3);
    let group = PatternGroup::new(&p, &gf(2));
    let zero = AlgebraElement::from_diagram(&group, &ArcDiagram::empty(&p, &gf(2))).unwrap();
    assert_eq!(group.two_sided_orbit(&zero).unwrap(), vec![zero.clone()]);
    let z = Functional::from_diagram(&group, &ArcDiagram::empty(&p, &gf(2))).unwrap();
    assert_eq!(group.dual_orbit(&z).unwrap().len(), 1);
}

#[test]
fn orbit_guard_reports_size() {
    let group = PatternGroup::with_limit(&Poset::chain(4), &gf(2), 4);
    let lam = Functional::from_diagram(
        &group,
        &ArcDiagram::from_labels(group.poset(), &gf(2), &[("1", "4", 1)]).unwrap(),
    )
    .unwrap();
    assert!(matches!(
        group.dual_orbit(&lam),
        Err(nnscf::Error::GroupTooLarge { .. })
    ));
}

#[test]
fn extension_field_group() {
    let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
    let group = PatternGroup::new(&Poset::chain(3), &f);
    assert_eq!(group.checked_order().unwrap(), 64);
    let counts: HashMap<usize, usize> = SuperclassPartition::compute(&group)
        .unwrap()
        .diagrams
        .iter()
        .fold(HashMap::new(), |mut m, d| {
            *m.entry(d.len()).or_default() += 1;
            m
        });
    // shapes of NN([3]) weighted by (q-1)^arcs with q = 4
    assert_eq!(counts[&0], 1);
    assert_eq!(counts[&1], 9);
    assert_eq!(counts[&2], 9);
}

fn ut4_3() -> PatternGroup {
    PatternGroup::new(&Poset::chain(4), &gf(3))
}

proptest! {
    #[test]
    fn group_axioms(a in 0u64..729, b in 0u64..729, c in 0u64..729) {
        let g = ut4_3();
        let (x, y, z) = (
            g.element(g.raw_at(a)).unwrap(),
            g.element(g.raw_at(b)).unwrap(),
            g.element(g.raw_at(c)).unwrap(),
        );
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.mul(&x.inv()).unwrap().is_identity());
        prop_assert!(x.inv().mul(&x).unwrap().is_identity());
        prop_assert_eq!(x.f_map().f_inv(), x.clone());
        prop_assert_eq!(x.index(), a);
    }

    #[test]
    fn conjugation_preserves_superclass(a in 0u64..729, b in 0u64..729) {
        let g = ut4_3();
        let (x, h) = (g.element(g.raw_at(a)).unwrap(), g.element(g.raw_at(b)).unwrap());
        let c = x.mul(&h).unwrap().mul(&x.inv()).unwrap();
        prop_assert_eq!(c.sml(), h.sml());
    }
}
