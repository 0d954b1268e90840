use brmult_core::hilbert::{difference_multiplicity, multiplicity, newton_multiplicity, DIFFERENCE_POWER_CAP};
use brmult_core::jones::{jones_br, JonesInstance};
use brmult_core::linkage::{colength_by_links, link_chain};
use brmult_core::{Fp31, GeneralElementSampler, Ideal, MonomialIdeal, Rational, Route};
use proptest::prelude::*;

fn staircase() -> impl Strategy<Value = MonomialIdeal> {
    (prop::collection::btree_set(1u32..8, 1..4), prop::collection::btree_set(1u32..8, 1..4)).prop_map(|(xs, ys)| {
        let k = xs.len().min(ys.len());
        let mut xs: Vec<u32> = xs.into_iter().take(k).collect();
        let mut ys: Vec<u32> = ys.into_iter().take(k).collect();
        xs.insert(0, 0);
        ys.reverse();
        ys.push(0);
        MonomialIdeal::new(&xs.into_iter().zip(ys).collect::<Vec<_>>()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_and_basis_colengths_agree(a in staircase()) {
        let ideal: Ideal<Rational> = a.to_ideal();
        prop_assert_eq!(ideal.colength().unwrap(), a.colength().unwrap());
    }

    #[test]
    fn newton_and_difference_agree(a in staircase()) {
        let ideal: Ideal<Fp31> = a.to_ideal();
        prop_assert_eq!(
            newton_multiplicity(&ideal).unwrap(),
            difference_multiplicity(&ideal, DIFFERENCE_POWER_CAP).unwrap()
        );
    }

    #[test]
    fn links_recover_colength(a in staircase(), seed in 0u64..1000) {
        let ideal: Ideal<Fp31> = a.to_ideal();
        let chain = link_chain(&ideal, &mut GeneralElementSampler::new(seed)).unwrap();
        prop_assert_eq!(colength_by_links(&chain), a.colength().unwrap());
    }
}

#[test]
fn routes_agree_on_a_curve_singularity() {
    // a complete intersection, so e equals the colength (here 5)
    let a: Ideal<Rational> = brmult_core::parse::parse_ideal("x^2 + y^3, x*y", 2).unwrap();
    let mut s = GeneralElementSampler::new(3);
    let r = multiplicity(&a, Route::All, &mut s).unwrap();
    assert!(r.consistent);
    assert_eq!((r.value, a.colength().unwrap()), (5, 5));
}

#[test]
fn jones_area_case() {
    let inst = JonesInstance::new(2, 3, 1, 1, 1, 0).unwrap();
    let r = jones_br::<Fp31>(&inst, &mut GeneralElementSampler::new(0)).unwrap();
    assert_eq!((r.e_j, r.e_i, r.dark_area2, r.br), (12, 6, 1, 5));
}
