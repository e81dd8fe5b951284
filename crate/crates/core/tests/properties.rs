mod common;

use common::{nc_from_gens, random_map, random_nc, rng, Fm};
use ncx::ncset::{closure, nc_image, nc_scale, nc_sum, nearly_equal, rel_interior, set_equal, set_subset, NcSet};
use ncx::num::{q, qr, QVec};
use ncx::poly::{strict_feasible, HRep, LinMap, Row};
use proptest::prelude::*;

fn rows(dim: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64, bool)>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), -3i64..=3, any::<bool>()), 1..8)
}

fn hrep(dim: usize, rs: &[(Vec<i64>, i64, bool)]) -> HRep {
    let mut h = HRep::universe(dim);
    for (a, b, strict) in rs {
        let r = Row::new(QVec::from_ints(a), q(*b));
        if *strict {
            h.lt.push(r);
        } else {
            h.le.push(r);
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn elimination_agrees_with_lp(rs in rows(3)) {
        let h = hrep(3, &rs);
        prop_assert_eq!(Fm::from_hrep(&h).is_empty(), strict_feasible(&h).is_none());
    }

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let e = random_nc(&mut rng(seed), 3).set;
        let c = e.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert!(set_equal(&c, &e));
    }

    #[test]
    fn pieces_stay_between_core_and_closure(seed in any::<u64>()) {
        let e = random_nc(&mut rng(seed), 3);
        prop_assert!(set_subset(&NcSet::from_piece(e.core.clone()), &e.set));
        prop_assert!(set_subset(&e.set, &NcSet::from_piece(e.closure.clone())));
    }

    #[test]
    fn sum_commutes(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = random_nc(&mut g, 2);
        let b = loop {
            let b = random_nc(&mut g, 2);
            if b.set.dim == a.set.dim {
                break b;
            }
        };
        prop_assert!(set_equal(&nc_sum(&a.set, &b.set), &nc_sum(&b.set, &a.set)));
        let origin = NcSet::point(&QVec::zeros(a.set.dim));
        prop_assert!(set_equal(&nc_sum(&a.set, &origin), &a.set));
    }

    #[test]
    fn images_keep_near_equality(seed in any::<u64>()) {
        let mut g = rng(seed);
        let e = random_nc(&mut g, 3);
        let other = nc_from_gens(&mut g, e.gens.clone(), 5);
        prop_assert!(nearly_equal(&e.set, &other.set).unwrap());
        let m = random_map(&mut g, e.set.dim, 2);
        prop_assert!(nearly_equal(&nc_image(&e.set, &m), &nc_image(&other.set, &m)).unwrap());
    }

    #[test]
    fn scaling_commutes_with_ri_and_closure(seed in any::<u64>(), num in 1i64..5, den in 1i64..4) {
        let e = random_nc(&mut rng(seed), 3);
        let lambda = qr(num, den);
        let s = nc_scale(&e.set, &lambda);
        let dilate = LinMap::linear((0..e.set.dim).map(|i| QVec::unit(e.set.dim, i).scale(&lambda)).collect(), e.set.dim);
        prop_assert!(Fm::from_hrep(&rel_interior(&s).unwrap()).equals(&Fm::from_hrep(&e.core).image(&dilate)));
        prop_assert!(Fm::from_hrep(&closure(&s)).equals(&Fm::from_hrep(&e.closure).image(&dilate)));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let e = random_nc(&mut rng(seed), 3).set;
        let back: NcSet = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }
}
