use std::cmp::Ordering;

use proptest::prelude::*;
use supersym_core::bases::{monomial_product, AbstractPoly};
use supersym_core::generic::{n_count_series, n_enumerate, parse_with_types, NSector};
use supersym_core::grassmann::{ExplicitPoly, VarConfig};
use supersym_core::scalar::{int, rat};
use supersym_core::spar::{compare, count_sector_series, enumerate_sector, weight_compare, Sector, WeightOrder};
use supersym_core::transforms::Algebra;
use supersym_core::{Basis, Rational, SuperPartition};

fn sector(max_n: u32, max_f: u32) -> impl Strategy<Value = Sector> {
    (0..=max_n, 0..=max_f, 0..=max_f).prop_map(|(n, o, u)| Sector::new(n, o, u))
}

/// A superpartition drawn from a nonempty sector.
fn spar(max_n: u32, max_f: u32) -> impl Strategy<Value = SuperPartition> {
    (sector(max_n, max_f), any::<prop::sample::Index>()).prop_filter_map("empty sector", |(s, i)| {
        let all = enumerate_sector(s);
        (!all.is_empty()).then(|| all[i.index(all.len())].clone())
    })
}

fn poly_in(s: Sector, basis: Basis, coeffs: &[i64]) -> AbstractPoly<Rational> {
    let mut p = AbstractPoly::zero(basis);
    for (lam, &c) in enumerate_sector(s).into_iter().zip(coeffs.iter().cycle()) {
        p.add_term(lam, int(c));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_form_roundtrips(lam in spar(6, 3)) {
        let back: SuperPartition = lam.to_string().parse().unwrap();
        prop_assert_eq!(back, lam);
    }

    #[test]
    fn enumeration_is_strictly_ordered_and_counted(s in sector(6, 3)) {
        let all = enumerate_sector(s);
        for w in all.windows(2) {
            prop_assert_eq!(compare(&w[0], &w[1]), Ordering::Greater);
        }
        for lam in &all {
            prop_assert_eq!(lam.sector(), s);
        }
        let series = count_sector_series(s.n, s.over, s.under);
        prop_assert_eq!(all.len() as u128, series.get(s.n, s.over, s.under));
    }

    #[test]
    fn total_order_extends_weight_order(a in spar(5, 2), b in spar(5, 2)) {
        match weight_compare(&a, &b) {
            WeightOrder::Greater => prop_assert_eq!(compare(&a, &b), Ordering::Greater),
            WeightOrder::Less => prop_assert_eq!(compare(&a, &b), Ordering::Less),
            _ => {}
        }
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b) == Ordering::Equal, a == b);
    }

    #[test]
    fn words_pick_up_permutation_signs(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let cfg = VarConfig::n2(3);
        let gens: Vec<(usize, usize)> = (0..3).flat_map(|v| [(v, 0), (v, 1)]).collect();
        let word = |order: &[usize]| {
            order.iter().fold(ExplicitPoly::<Rational>::one(cfg), |f, &k| {
                f.mul(&ExplicitPoly::fermion(cfg, gens[k].0, gens[k].1))
            })
        };
        let mut inversions = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                inversions += (perm[i] > perm[j]) as i64;
            }
        }
        let sign = if inversions % 2 == 0 { int(1) } else { int(-1) };
        let sorted: Vec<usize> = (0..6).collect();
        prop_assert_eq!(word(&perm), word(&sorted).scale(&sign));
        let reversed: Vec<usize> = perm.iter().rev().copied().collect();
        prop_assert_eq!(word(&perm).top(), word(&reversed));
    }

    #[test]
    fn repeated_generator_vanishes(v in 0..3usize, slot in 0..2usize) {
        let cfg = VarConfig::n2(3);
        let f = ExplicitPoly::<Rational>::fermion(cfg, v, slot);
        prop_assert!(f.mul(&f).is_empty());
    }

    #[test]
    fn monomial_products_supercommute(a in spar(2, 1), b in spar(2, 1)) {
        let ab = monomial_product(&a, &b);
        let ba = monomial_product(&b, &a);
        let odd = a.sector().fermions() % 2 == 1 && b.sector().fermions() % 2 == 1;
        prop_assert_eq!(ab.len(), ba.len());
        for (k, c) in &ab {
            let want = if odd { -*c } else { *c };
            prop_assert_eq!(ba.get(k).copied(), Some(want));
        }
    }

    #[test]
    fn conversions_roundtrip(
        s in sector(3, 2),
        basis in prop::sample::select(vec![Basis::P, Basis::H, Basis::E, Basis::G]),
        coeffs in prop::collection::vec(-5i64..=5, 1..6),
    ) {
        let alg = Algebra::new(rat(3, 2));
        let f = poly_in(s, Basis::M, &coeffs);
        let there = alg.convert(&f, basis);
        prop_assert_eq!(alg.convert(&there, Basis::M), f);
    }

    #[test]
    fn omega_is_an_involution(s in sector(3, 2), coeffs in prop::collection::vec(-5i64..=5, 1..6)) {
        let alg = Algebra::new(int(1));
        let f = poly_in(s, Basis::M, &coeffs);
        prop_assert_eq!(alg.omega_hat(&alg.omega_hat(&f)), f);
    }

    #[test]
    fn inner_product_is_supersymmetric(
        s in sector(3, 2),
        x in prop::collection::vec(-3i64..=3, 1..5),
        y in prop::collection::vec(-3i64..=3, 1..5),
    ) {
        // Bilinear and even, so ⟨f|g⟩ = ⟨g|f⟩ within one sector.
        let alg = Algebra::new(rat(2, 5));
        let (f, g) = (poly_in(s, Basis::H, &x), poly_in(s, Basis::E, &y));
        prop_assert_eq!(alg.inner(&f, &g), alg.inner(&g, &f));
    }

    #[test]
    fn generic_enumeration_roundtrips_and_counts(
        n_types in 1u32..=3,
        n in 0u32..=3,
        degrees in prop::collection::vec(0u32..=2, 3),
    ) {
        let s = NSector::new(n, degrees[..n_types as usize].to_vec());
        let all = n_enumerate(&s);
        for lam in &all {
            prop_assert_eq!(&lam.sector(), &s);
            prop_assert_eq!(&parse_with_types(&lam.to_string(), n_types).unwrap(), lam);
        }
        let mut sorted: Vec<String> = all.iter().map(|l| l.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
        let series = n_count_series(n_types, n, 2);
        prop_assert_eq!(all.len() as u128, series.get(&s).copied().unwrap_or(0));
    }
}
