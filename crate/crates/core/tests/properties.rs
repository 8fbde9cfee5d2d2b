use std::sync::OnceLock;

use num::BigRational;
use proptest::prelude::*;
use weylext::{Coweight, ExtAffineElement, RootDatum, Side};

struct Fixture {
    datum: RootDatum,
    elements: Vec<ExtAffineElement>,
    dominant: Vec<Coweight>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["GL2", "PGL2", "GL3", "PGL3"]
            .iter()
            .map(|name| {
                let datum = RootDatum::preset(name).unwrap();
                let elements = datum.box_elements(2);
                let dominant = datum.box_coweights(2).into_iter().filter(|m| datum.is_dominant(m)).collect();
                Fixture { datum, elements, dominant }
            })
            .collect()
    })
}

fn pick(f: &Fixture, i: usize) -> &ExtAffineElement {
    &f.elements[i % f.elements.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws(k in 0usize..4, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let f = &fixtures()[k];
        let (a, b, c) = (pick(f, i), pick(f, j), pick(f, l));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert_eq!(&f.datum.identity().mul(a), a);
    }

    #[test]
    fn length_is_inverse_invariant_and_moves_by_one(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let w = pick(f, i);
        prop_assert_eq!(d.length(w), d.length(&w.inv()));
        for g in d.generators() {
            let (lw, lws) = (d.length(w) as i64, d.length(&w.mul(&g.element)) as i64);
            prop_assert_eq!((lw - lws).abs(), 1);
        }
    }

    #[test]
    fn reduced_word_reassembles(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let w = pick(f, i);
        let word = d.omega_decompose(w);
        prop_assert_eq!(word.letters.len() as u64, d.length(w));
        prop_assert_eq!(d.length(&word.omega), 0);
        prop_assert_eq!(&d.word_product(&word), w);
    }

    #[test]
    fn literal_round_trip(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let w = pick(f, i);
        prop_assert_eq!(&f.datum.parse_element(&f.datum.literal(w)).unwrap(), w);
    }

    #[test]
    fn right_representatives_bracket_the_coset(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let w = pick(f, i);
        for a in d.all_finitary() {
            let lo = d.min_rep(w, &a, Side::Right);
            let hi = d.max_rep(w, &a, Side::Right);
            prop_assert!(d.is_minimal_in_right_coset(&lo, &a));
            prop_assert_eq!(d.length(&hi), d.length(&lo) + d.length(&a.longest));
            prop_assert_eq!(&lo.mul(&a.longest), &hi);
            prop_assert!(d.length(&lo) <= d.length(w) && d.length(w) <= d.length(&hi));
        }
    }

    #[test]
    fn steinberg_factor_round_trip(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let w = d.min_rep(pick(f, i), &d.finite_parabolic(), Side::Right);
        let fac = d.steinberg_factor(&w).unwrap();
        prop_assert_eq!(fac.x.mul(&d.translation(&fac.nu)), w);
        prop_assert!(d.is_restricted(&fac.x) && d.is_antidominant(&fac.nu));
        prop_assert_eq!(fac.lengths.0 + fac.lengths.1, fac.lengths.2);
    }

    #[test]
    fn restricted_tests_agree(k in 0usize..4, i in any::<usize>()) {
        let f = &fixtures()[k];
        let w = pick(f, i);
        prop_assert_eq!(f.datum.is_restricted(w), f.datum.is_restricted_by_alcove(w));
    }

    #[test]
    fn conv_fiber_degenerates_at_lowest_weight(k in 0usize..4, i in any::<usize>(), m in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let y = d.min_rep(pick(f, i), &d.finite_parabolic(), Side::Right);
        let mu = &f.dominant[m % f.dominant.len()];
        let eta = d.longest_finite().act(mu);
        let r = d.conv_fiber_bound(&y, mu, &eta).unwrap();
        prop_assert!(r.nonempty_possible && r.nonempty_forced && !r.strict);
        prop_assert_eq!(r.dimension_or_bound, BigRational::from_integer(0.into()));
    }

    #[test]
    fn mv_extremes_fill_the_orbit(k in 0usize..4, m in any::<usize>()) {
        let f = &fixtures()[k];
        let d = &f.datum;
        let lambda = &f.dominant[m % f.dominant.len()];
        let full = BigRational::from_integer(d.orbit_dim(&d.spherical_label(lambda).unwrap()).into());
        let s = d.mv_intersection_s(lambda, lambda).unwrap();
        let t = d.mv_intersection_t(lambda, &d.longest_finite().act(lambda)).unwrap();
        prop_assert!(s.nonempty_possible && t.nonempty_possible);
        prop_assert_eq!(s.dimension_or_bound, full.clone());
        prop_assert_eq!(t.dimension_or_bound, full);
    }
}
