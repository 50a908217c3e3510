use num_complex::Complex64;
use proptest::prelude::*;

use freefermi::bounds::{gaussian_overlap, gaussian_rank_bound, spectra_overlap_bound};
use freefermi::cft::{cft_spectrum, CftParams};
use freefermi::gaussian::{
    random_physical, random_pure_gaussian, restrict, to_correlation, to_majorana, Bipartition,
};
use freefermi::gfmps::ladder::{
    build_ladder, ladder_errors, max_grid_zeros, occupation_pi_theta, LadderSpec, OddPoly, Strategy as Ansatz,
};
use freefermi::gfmps::rail::random_rail;
use freefermi::gfmps::{contract_momentum, contraction_purity_error, FiducialState};
use freefermi::hopping::{correlation_finite, MomentumGrid};
use freefermi::linalg::{haar_orthogonal, herm_eigenvalues, max_abs, max_abs_c};
use freefermi::spectrum::{
    counting_function, gaussian_spectrum_majorana, renyi_entropy, GaussianSpectrum,
};
use freefermi::toy::{toy_gfmps_overlap_bound, ToySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lambdas() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..=1.0, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn majorana_round_trip(n in 1usize..=16, seed in any::<u64>()) {
        let c = random_physical(n, seed);
        let back = to_correlation(&to_majorana(&c)).unwrap();
        prop_assert!(max_abs_c(&(back.entries() - c.entries())) < 1e-12);
    }

    #[test]
    fn restriction_commutes(n in 2usize..=10, seed in any::<u64>(), mask in any::<u16>()) {
        let c = random_physical(n, seed);
        let region: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!region.is_empty());
        let a = to_majorana(&restrict(&c, &region).unwrap());
        let b = to_majorana(&c).restrict(&region).unwrap();
        prop_assert!(max_abs(&(a.entries() - b.entries())) < 1e-14);
    }

    #[test]
    fn random_states_are_pure(n in 1usize..=12, seed in any::<u64>(), nc in any::<bool>()) {
        prop_assert!(random_pure_gaussian(n, seed, nc).purity_error() < 1e-9);
    }

    #[test]
    fn complementary_cuts_share_spectrum(n in 2usize..=10, seed in any::<u64>(), l in 1usize..10) {
        prop_assume!(l < n);
        let g = random_pure_gaussian(n, seed, false);
        let bip = Bipartition::contiguous(n, l).unwrap();
        let keep = |s: GaussianSpectrum| -> Vec<f64> {
            s.lambdas().iter().map(|x| x.abs()).filter(|x| *x < 1.0 - 1e-9).collect()
        };
        let a = keep(gaussian_spectrum_majorana(&g.restrict(bip.left()).unwrap()).unwrap());
        let b = keep(gaussian_spectrum_majorana(&g.restrict(bip.right()).unwrap()).unwrap());
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn renyi_nonincreasing_in_alpha(l in lambdas(), a in 0.05f64..5.0, b in 0.05f64..5.0) {
        let s = GaussianSpectrum::new(l).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (x, y) = (renyi_entropy(&s, lo).unwrap(), renyi_entropy(&s, hi).unwrap());
        prop_assert!(y <= x + 1e-12);
        prop_assert!(renyi_entropy(&s, f64::INFINITY).unwrap() <= y + 1e-12);
    }

    #[test]
    fn counting_nondecreasing_in_mu(l in lambdas(), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let s = GaussianSpectrum::new(l).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(counting_function(&s, lo) <= counting_function(&s, hi));
    }

    #[test]
    fn overlap_symmetric_and_invariant(n in 1usize..=6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = random_pure_gaussian(n, s1, false);
        let h = random_pure_gaussian(n, s2, false);
        let a = gaussian_overlap(&g, &h).unwrap();
        prop_assert!((a - gaussian_overlap(&h, &g).unwrap()).abs() < 1e-10);
        let r = haar_orthogonal(2 * n, &mut ChaCha8Rng::seed_from_u64(s1 ^ s2));
        let b = gaussian_overlap(&g.transform(&r), &h.transform(&r)).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn rank_bound_is_spectra_bound_with_zeros(l in lambdas(), r in 0usize..12) {
        let s = GaussianSpectrum::new(l).unwrap();
        let r = r.min(s.len());
        let th = s.thetas();
        let mut tilde = th.clone();
        tilde.iter_mut().skip(r).for_each(|t| *t = 0.0);
        let a = spectra_overlap_bound(&th, &tilde).unwrap();
        let b = gaussian_rank_bound(&s, r).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        if r > 0 {
            prop_assert!(gaussian_rank_bound(&s, r - 1).unwrap() <= b);
        }
    }

    #[test]
    fn ring_correlation_eigenvalues_in_unit_interval(n in 2usize..200, frac in 0.0f64..1.0) {
        let l = ((frac * n as f64) as usize).clamp(1, n);
        let ev = herm_eigenvalues(correlation_finite(l, n).unwrap().entries()).unwrap();
        prop_assert!(ev.iter().all(|x| (-1e-9..=1.0 + 1e-9).contains(x)));
    }

    #[test]
    fn delta_bounds_infidelity(half in 8usize..80, chi in 0usize..12, s in 0usize..4) {
        let n = 4 * half + 2;
        let strategy = Ansatz::ALL[s];
        let chi_m = 2 * chi.min(max_grid_zeros(n).unwrap()) + 1;
        let l = build_ladder(n, strategy, chi_m).unwrap();
        let (delta, eps) = ladder_errors(&l, n).unwrap();
        prop_assert!(eps <= delta + 1e-12, "ε {} δ {}", eps, delta);
    }

    #[test]
    fn contracted_states_are_pure(f in 1usize..=2, chi in 1usize..=4, seed in any::<u64>(), k in -3.1f64..3.1) {
        let fid = FiducialState::random(f, 2 * chi, seed).unwrap();
        if let Ok(g) = contract_momentum(&fid, k) {
            prop_assert!(contraction_purity_error(&g) < 1e-8);
        }
    }

    #[test]
    fn rails_are_unimodular_with_inner_poles(chi in 1usize..=5, seed in any::<u64>(), k in -3.1f64..3.1) {
        let rail = random_rail(1, chi, seed).unwrap();
        let z = Complex64::from_polar(1.0, k);
        prop_assert!((rail.transfer_scalar(z).unwrap().norm() - 1.0).abs() < 1e-9);
        let b = rail.blaschke().unwrap();
        prop_assert!(b.poles.len() <= chi);
        prop_assert!(b.poles.iter().all(|p| p.norm() < 1.0));
    }

    #[test]
    fn exact_momenta_survive_parametrisation_change(half in 4usize..40, d in 1usize..6) {
        let n = 4 * half + 2;
        let d = d.min(max_grid_zeros(n).unwrap());
        let l = build_ladder(n, Ansatz::AllNearFermi, 2 * d + 1).unwrap();
        let (pi, theta) = l.pi_theta();
        let grid = MomentumGrid::new(n).unwrap();
        for idx in 0..grid.size() {
            let k = grid.momentum(idx);
            let a = l.occupation(k).unwrap();
            if a < 1e-12 || a > 1.0 - 1e-12 {
                let b = occupation_pi_theta(&pi, &theta, k);
                prop_assert!((a - b).abs() < 1e-9, "k {}: {} vs {}", k, a, b);
            }
        }
    }

    #[test]
    fn toy_bound_is_rank_bound(e in 6u32..=24, frac in 0.0f64..=1.0) {
        let spec = ToySpec::new(1usize << e, 1.0).unwrap();
        let chi = (frac * spec.nu as f64) as usize;
        let a = toy_gfmps_overlap_bound(&spec, chi).squared;
        let b = gaussian_rank_bound(&spec.half_ring_spectrum(), chi).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * b.max(1e-300));
    }

    #[test]
    fn cft_levels_come_in_doublets(m in 0usize..20, n in 10usize..5000, frac in 0.05f64..0.95) {
        let l = ((frac * n as f64) as usize).max(2);
        let p = CftParams::default();
        prop_assert_eq!(cft_spectrum(2 * m, l, n, &p).unwrap(), cft_spectrum(2 * m + 1, l, n, &p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_polynomial_bases_agree(roots in prop::collection::vec(0.0f64..1.0, 0..6),
                                  cheb in prop::collection::vec(-1.0f64..1.0, 1..5),
                                  x in -1.0f64..=1.0) {
        let r = OddPoly::Roots(roots.clone());
        let m = OddPoly::Monomial(r.monomial());
        prop_assert!((r.eval(x) - m.eval(x)).abs() < 1e-10);
        let mut c = vec![0.0; 2 * cheb.len()];
        for (i, v) in cheb.iter().enumerate() {
            c[2 * i + 1] = *v;
        }
        prop_assume!(cheb[cheb.len() - 1].abs() > 1e-3);
        let t = OddPoly::Chebyshev(c);
        let tm = OddPoly::Monomial(t.monomial());
        prop_assert!((t.eval(x) - tm.eval(x)).abs() < 1e-9);
        let lad = LadderSpec::new(r, OddPoly::Roots(roots.clone())).unwrap();
        prop_assert_eq!(lad.chi_majorana(), 2 * roots.len() + 1);
    }
}
