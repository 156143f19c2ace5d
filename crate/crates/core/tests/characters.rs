use nnscf::arcs::enumerate;
use nnscf::supercharacters::{
    algebra_dim_linear, big_fiber_character, coarsen_from_algebra, coarsen_superclass,
    ind_res_character, supercharacter_dim, supercharacter_value, verify_algebra_table,
    verify_coarsening, verify_sct,
};
use nnscf::{
    ArcDiagram, ClassFunction, CycNumber, Field, PatternGroup, Poset, SupercharacterTable,
};
use num_bigint::BigUint;

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

#[test]
fn sct_on_small_posets() {
    for poset in Poset::all_on(&["a", "b", "c"]).unwrap() {
        let report = verify_sct(&PatternGroup::new(&poset, &gf(2))).unwrap();
        assert!(report.passed(), "{poset:?}: {:?}", report.checks);
    }
    let report = verify_sct(&PatternGroup::new(&hasse6(), &gf(2))).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    assert_eq!(report.group_order, 128);
    let report = verify_sct(&PatternGroup::new(&Poset::chain(2), &gf(3))).unwrap();
    assert!(report.passed());
    assert_eq!(report.supercharacters, 3);
}

#[test]
fn sct_over_extension_field() {
    let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
    let report = verify_sct(&PatternGroup::new(&Poset::chain(3), &f)).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
}

#[test]
fn ind_res_equals_big_fiber() {
    let posets = [Poset::chain(3), Poset::chain(4), hasse6()];
    for poset in posets {
        for p in [2, 3] {
            let group = PatternGroup::new(&poset, &gf(p));
            if group.checked_order().unwrap() > 1 << 10 {
                continue;
            }
            for eta in enumerate(&poset, &gf(p), true) {
                assert_eq!(
                    ind_res_character(&group, &eta).unwrap(),
                    big_fiber_character(&group, &eta).unwrap(),
                    "{poset:?} {eta}"
                );
            }
        }
    }
}

#[test]
fn dimensions_and_regular_identity() {
    let p = Poset::chain(3);
    let f = gf(2);
    let dims: Vec<BigUint> = enumerate(&p, &f, true)
        .iter()
        .map(|d| supercharacter_dim(d).unwrap())
        .collect();
    assert_eq!(dims.iter().sum::<BigUint>(), BigUint::from(8u32));
    assert_eq!(
        supercharacter_dim(&ArcDiagram::empty(&p, &f)).unwrap(),
        BigUint::from(1u32)
    );
    // the sum of squared degrees over |K| is the group order only for irreducibles; here
    // Σ χ(1) = |U| because each irreducible occurs once with multiplicity its degree
    let group = PatternGroup::new(&p, &f);
    let mut sum = ClassFunction::zero(&group).unwrap();
    for eta in enumerate(&p, &f, true) {
        sum = sum.add(&ind_res_character(&group, &eta).unwrap()).unwrap();
    }
    assert_eq!(sum, ClassFunction::regular(&group).unwrap());
}

#[test]
fn trivial_character_is_constant_one() {
    for poset in [Poset::chain(3), hasse6()] {
        let group = PatternGroup::new(&poset, &gf(2));
        let empty = ArcDiagram::empty(&poset, &gf(2));
        assert_eq!(
            ind_res_character(&group, &empty).unwrap(),
            ClassFunction::constant(&group, 1).unwrap()
        );
        for nu in enumerate(&poset, &gf(2), true) {
            assert!(supercharacter_value(&empty, &nu).unwrap().is_one());
        }
    }
}

#[test]
fn table_shape_and_identity_column() {
    let t = SupercharacterTable::nonnesting(&hasse6(), &gf(2)).unwrap();
    assert!(t.diagrams[0].is_empty());
    for (row, dim) in t.values.iter().zip(&t.dims) {
        assert_eq!(row[0], CycNumber::from_bigint(2, dim.clone().into()));
    }
    let sizes = t.class_sizes.as_ref().unwrap();
    assert_eq!(sizes.iter().sum::<BigUint>(), BigUint::from(128u32));
    let empty = SupercharacterTable::nonnesting(&Poset::empty(), &gf(2)).unwrap();
    assert_eq!(empty.len(), 1);
    assert!(empty.values[0][0].is_one());
}

#[test]
fn algebra_table_matches_orbits() {
    for n in 0..=4 {
        let group = PatternGroup::new(&Poset::chain(n), &gf(2));
        for check in verify_algebra_table(&group).unwrap() {
            assert!(check.passed, "n = {n}: {check:?}");
        }
    }
    let group = PatternGroup::new(&Poset::chain(3), &gf(3));
    for check in verify_algebra_table(&group).unwrap() {
        assert!(check.passed, "{check:?}");
    }
}

#[test]
fn algebra_table_on_three_points_has_same_index() {
    let p = Poset::chain(3);
    let alg = SupercharacterTable::algebra(&p, &gf(2), 1 << 20).unwrap();
    let nn = SupercharacterTable::nonnesting(&p, &gf(2)).unwrap();
    assert_eq!(alg.diagrams, nn.diagrams);
    assert_eq!(alg.values, nn.values);
    assert!(SupercharacterTable::algebra(&hasse6(), &gf(2), 1 << 20).is_err());
}

#[test]
fn coarsening_recovers_nonnesting_theory() {
    for n in 0..=4 {
        let group = PatternGroup::new(&Poset::chain(n), &gf(2));
        for check in verify_coarsening(&group).unwrap() {
            assert!(check.passed, "n = {n}: {check:?}");
        }
    }
}

#[test]
fn coarsened_degree_on_four_points() {
    let p = Poset::chain(4);
    let f = gf(2);
    let group = PatternGroup::new(&p, &f);
    let eta = ArcDiagram::from_labels(&p, &f, &[("1", "4", 1)]).unwrap();
    let chi = coarsen_from_algebra(&group, &eta).unwrap();
    assert_eq!(chi.value_at(0), CycNumber::from_integer(2, 32));
    // the big fiber is {14} and {14, 23}, with algebra degrees 16 and 16
    let nested = ArcDiagram::from_labels(&p, &f, &[("1", "4", 1), ("2", "3", 1)]).unwrap();
    assert_eq!(algebra_dim_linear(&eta).unwrap(), BigUint::from(16u32));
    assert_eq!(algebra_dim_linear(&nested).unwrap(), BigUint::from(16u32));
    assert_eq!(
        coarsen_superclass(&group, &ArcDiagram::empty(&p, &f)).unwrap(),
        vec![0]
    );
}

#[test]
fn inner_product_errors_on_group_mismatch() {
    let a = ClassFunction::constant(&PatternGroup::new(&Poset::chain(2), &gf(2)), 1).unwrap();
    let b = ClassFunction::constant(&PatternGroup::new(&Poset::chain(3), &gf(2)), 1).unwrap();
    assert!(matches!(
        a.inner_product(&b),
        Err(nnscf::Error::GroupMismatch)
    ));
}

#[test]
fn value_errors() {
    let p = Poset::chain(3);
    let f = gf(2);
    let nested = ArcDiagram::from_labels(&p, &f, &[("1", "3", 1), ("2", "2", 1)]);
    assert!(nested.is_err());
    let q = Poset::chain(4);
    let nesting = ArcDiagram::from_labels(&q, &f, &[("1", "4", 1), ("2", "3", 1)]).unwrap();
    assert!(matches!(
        supercharacter_dim(&nesting),
        Err(nnscf::Error::NotNonnesting)
    ));
    let other = ArcDiagram::empty(&p, &f);
    assert!(supercharacter_value(&nesting, &other).is_err());
}
