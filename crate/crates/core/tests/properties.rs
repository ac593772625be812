use std::collections::BTreeMap;

use exactexpo::algebra::{
    lattice::trimmed_up_closure_transform, moebius, yates, zeta, Field, Gf2k, Matrix, Ring, TransformKind, Zp, I128,
};
use exactexpo::coloring::{enumerate_maximal_independent_sets, k_coloring_via_cover, three_coloring_15n};
use exactexpo::covering::{cross_middle_layer, set_cover_2n, set_cover_trimmed, DownClosureOracle};
use exactexpo::hamiltonicity::{ham_cycles_through_arc_exact, undirected_ham_2n, PitConfig};
use exactexpo::instances::generate;
use exactexpo::mask::{self, SubsetMask};
use exactexpo::oracles::{self, OracleBudget};
use exactexpo::satkit::{fibonacci_step_bound, local_search, monien_speckenmeyer, switch_sat, SwitchConfig};
use exactexpo::sparsifier::{reduce_traced, SparsifierConfig};
use exactexpo::subsetsum::{build_residue_list, meet_in_middle, representation_method, ResidueListSpec};
use exactexpo::{CnfFormula, Counters, Multigraph, Seed, SetSystem, WeightedInstance};
use proptest::prelude::*;

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn cnf_round_trip(n in 3usize..12, m in 0usize..30, s in any::<u64>()) {
        let f = generate::random_kcnf(n, m, 3, Seed(s)).unwrap();
        prop_assert_eq!(CnfFormula::parse(&f.render()).unwrap(), f.clone());
        prop_assert_eq!(generate::random_kcnf(n, m, 3, Seed(s)).unwrap(), f);
    }

    #[test]
    fn graph_round_trip(n in 0usize..12, p in 0.0f64..1.0, directed in any::<bool>(), s in any::<u64>()) {
        let g = generate::random_graph(n, p, directed, Seed(s));
        prop_assert_eq!(Multigraph::parse(&g.render(), directed).unwrap(), g.clone());
        prop_assert_eq!(generate::random_graph(n, p, directed, Seed(s)), g);
        let h = generate::random_multidigraph(n, p, 3, Seed(s));
        prop_assert_eq!(Multigraph::parse(&h.render(), true).unwrap(), h);
    }

    #[test]
    fn set_system_round_trip(n in 1usize..16, m in 0usize..10, s in any::<u64>()) {
        let sys = generate::random_set_system(n, m, n, Seed(s)).unwrap();
        prop_assert_eq!(SetSystem::parse(&sys.render()).unwrap(), sys);
    }

    #[test]
    fn weighted_round_trip(w in prop::collection::vec(0u128..1 << 40, 0..12), t in any::<u64>(), k in 1usize..5) {
        let ss = WeightedInstance::subset_sum(w.clone(), t as u128);
        prop_assert_eq!(WeightedInstance::parse(&ss.render()).unwrap(), ss);
        let bp = WeightedInstance::bin_packing(w, t as u128, k);
        prop_assert_eq!(WeightedInstance::parse(&bp.render()).unwrap(), bp);
    }

    #[test]
    fn planted_subset_sum_is_yes(half in 1usize..9, s in any::<u64>()) {
        let (inst, planted) = generate::planted_subset_sum(2 * half, Seed(s)).unwrap();
        prop_assert_eq!(inst.weight_of(planted), inst.target().unwrap());
        prop_assert!(oracles::subset_sum(&inst, &budget()).unwrap().is_some());
    }
}

fn field_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    prop_assert_eq!(f.add(a, &f.neg(a)), f.zero());
    prop_assert_eq!(f.sub(a, b), f.add(a, &f.neg(b)));
    prop_assert_eq!(f.mul(a, &f.one()), a.clone());
    match f.inv(a) {
        Some(i) => prop_assert_eq!(f.mul(a, &i), f.one()),
        None => prop_assert!(f.is_zero(a)),
    }
    Ok(())
}

fn naive_kron<R: Ring>(ring: &R, base: &Matrix<R::Elem>, n: usize, v: &[R::Elem]) -> Vec<R::Elem> {
    let (r, c) = (base.rows(), base.cols());
    (0..r.pow(n as u32))
        .map(|out| {
            (0..c.pow(n as u32)).fold(ring.zero(), |acc, inp| {
                let (mut o, mut i) = (out, inp);
                let mut coef = ring.one();
                for _ in 0..n {
                    coef = ring.mul(&coef, base.get(o % r, i % c));
                    o /= r;
                    i /= c;
                }
                ring.add(&acc, &ring.mul(&coef, &v[inp]))
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn gf2k_axioms(k in prop::sample::select((1u32..=16).chain([32, 53]).collect::<Vec<_>>()), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = Gf2k::new(k).unwrap();
        let m = f.mask();
        field_axioms(&f, &(a & m), &(b & m), &(c & m))?;
    }

    #[test]
    fn zp_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65537, 1_000_000_007]), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = Zp::new(p).unwrap();
        field_axioms(&f, &(a % p), &(b % p), &(c % p))?;
    }

    #[test]
    fn yates_matches_naive(r in 1usize..=3, c in 1usize..=3, n in 0usize..=4, s in any::<u64>()) {
        let mut rng = Seed(s).rng();
        use rand::Rng as _;
        let zp = Zp::new(101).unwrap();
        let base = Matrix::from_fn(r, c, |_, _| rng.random_range(0..101u64));
        let v: Vec<u64> = (0..c.pow(n as u32)).map(|_| rng.random_range(0..101)).collect();
        let mut counters = Counters::new();
        prop_assert_eq!(yates(&zp, &base, n, &v, &mut counters).unwrap(), naive_kron(&zp, &base, n, &v));
        let gf = Gf2k::new(8).unwrap();
        let base = Matrix::from_fn(r, c, |_, _| rng.random_range(0..256u64));
        let v: Vec<u64> = (0..c.pow(n as u32)).map(|_| rng.random_range(0..256)).collect();
        prop_assert_eq!(yates(&gf, &base, n, &v, &mut counters).unwrap(), naive_kron(&gf, &base, n, &v));
        let base = Matrix::from_fn(r, c, |_, _| rng.random_range(-4..=4i128));
        let v: Vec<i128> = (0..c.pow(n as u32)).map(|_| rng.random_range(-100..=100)).collect();
        prop_assert_eq!(yates(&I128, &base, n, &v, &mut counters).unwrap(), naive_kron(&I128, &base, n, &v));
    }

    #[test]
    fn zeta_round_trip(v in prop::collection::vec(-1000i128..1000, 1usize << 8)) {
        let mut c = Counters::new();
        let z = zeta(&I128, &v, &mut c).unwrap();
        prop_assert_eq!(moebius(&I128, &z, &mut c).unwrap(), v);
    }

    #[test]
    fn trimmed_transform_touches_the_closure(n in 1usize..=10, support in prop::collection::vec(any::<u64>(), 1..5)) {
        let support: Vec<SubsetMask> = support.into_iter().map(|m| m & mask::full(n)).collect();
        let v: BTreeMap<SubsetMask, i128> = support.iter().enumerate().map(|(i, &m)| (m, i as i128 + 1)).collect();
        let mut c = Counters::new();
        let out = trimmed_up_closure_transform(&I128, TransformKind::Zeta, n, &v, &mut c);
        let closure = (0..=mask::full(n)).filter(|&x| support.iter().any(|&s| s & !x == 0)).count();
        prop_assert_eq!(c.get("masks_touched"), closure as u64);
        let mut dense = vec![0i128; 1 << n];
        for (&m, &x) in &v {
            dense[m as usize] = x;
        }
        let dense = zeta(&I128, &dense, &mut Counters::new()).unwrap();
        for (&m, &x) in &out {
            prop_assert_eq!(x, dense[m as usize]);
        }
    }
}

fn radius_ball_oracle(phi: &CnfFormula, x: &[bool], d: usize) -> bool {
    let n = x.len();
    (0..1u64 << n).filter(|&f| f.count_ones() as usize <= d).any(|f| {
        let y: Vec<bool> = (0..n).map(|i| x[i] ^ (f >> i & 1 == 1)).collect();
        phi.eval(&y)
    })
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn local_search_bounds(n in 3usize..=10, d in 0usize..=4, s in any::<u64>()) {
        let phi = generate::random_kcnf(n, 4 * n, 3, Seed(s)).unwrap();
        let x: Vec<bool> = (0..n).map(|i| s >> i & 1 == 1).collect();
        let out = local_search(&phi, &x, d);
        prop_assert_eq!(out.satisfiable, radius_ball_oracle(&phi, &x, d));
        prop_assert!(out.counters.get("leaves") as u128 <= 3u128.pow(d as u32));
        prop_assert!(out.counters.get("calls") as u128 <= (0..=d as u32).map(|i| 3u128.pow(i)).sum::<u128>());
    }

    #[test]
    fn monien_speckenmeyer_bound(n in 1usize..=12, ratio in 1.0f64..8.0, s in any::<u64>()) {
        let m = (ratio * n as f64) as usize;
        let phi = generate::random_kcnf(n.max(3), m, 3, Seed(s)).unwrap();
        let out = monien_speckenmeyer(&phi);
        let nv = phi.num_vars();
        // T'[m] = T'[m-1] + T'[m-2] + T'[m-3], T'[0] = T'[1] = 1
        let mut t = vec![1u128; nv + 1];
        for i in 2..=nv {
            t[i] = (1..=3).map(|j| t[i.saturating_sub(j)]).sum();
        }
        prop_assert_eq!(fibonacci_step_bound(3, nv), t[nv]);
        prop_assert!(out.counters.get("leaves") as u128 <= t[nv]);
        prop_assert_eq!(out.satisfiable, oracles::sat(&phi, &budget()).unwrap().is_some());
    }

    #[test]
    fn switch_runs_every_restriction_on_no_instances(n in 3usize..=9, stars in 0usize..4, s in any::<u64>()) {
        let phi = generate::random_kcnf(n, 10 * n, 3, Seed(s)).unwrap();
        let stars = stars.min(n);
        let cfg = SwitchConfig { stars: Some(stars), depth_cap: None };
        let out = switch_sat(&phi, Seed(s ^ 1), cfg).unwrap();
        prop_assert_eq!(out.satisfiable, oracles::sat(&phi, &budget()).unwrap().is_some());
        if !out.satisfiable {
            prop_assert_eq!(out.counters.get("restrictions_run"), 1u64 << (n - stars));
        }
    }

    #[test]
    fn sparsifier_invariants(n in 4usize..=10, k in 2usize..=3, alpha in 1u64..=3, s in any::<u64>()) {
        let f = generate::random_set_system(n, 3 * n, k, Seed(s)).unwrap();
        let cfg = SparsifierConfig::with_alpha(k, 0.3, alpha).unwrap();
        let red = reduce_traced(&f, &cfg).unwrap();
        prop_assert_eq!(red.sigma_violations, 0);
        let hits = |g: &SetSystem, x: SubsetMask| g.sets().iter().all(|&y| y & x != 0);
        for x in 0..=mask::full(n) {
            prop_assert_eq!(hits(&f, x), red.outputs.iter().any(|o| hits(o, x)));
        }
        for o in &red.outputs {
            let freq = (0..n).map(|e| o.sets().iter().filter(|&&y| y >> e & 1 == 1).count()).max().unwrap_or(0);
            prop_assert!(freq as u128 <= cfg.degree_bound());
        }
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn set_cover_work_counters(n in 1usize..=10, m in 1usize..=8, k in 0usize..=3, s in any::<u64>()) {
        let sys = generate::random_set_system(n, m, n, Seed(s)).unwrap();
        let dense = set_cover_2n(&sys, k).unwrap();
        let passes = dense.counters.get("passes");
        prop_assert_eq!(dense.counters.get("masks_touched"), passes << n);
        let trimmed = set_cover_trimmed(&sys, k).unwrap();
        prop_assert_eq!(trimmed.decision, dense.decision);
        let closure = (0..=mask::full(n)).filter(|&x| sys.sets().iter().any(|&y| y & !x == 0)).count() as u64;
        if k > 0 {
            prop_assert_eq!(trimmed.counters.get("closure_size"), closure);
        }
        let truth = oracles::set_cover_count(&sys, k, &budget()).unwrap();
        prop_assert_eq!(dense.count_u128(), Some(truth));
    }

    #[test]
    fn cross_middle_work_counter(n in 2usize..=8, k in 1usize..=3, gens in prop::collection::vec(any::<u64>(), 1..4), fam in prop::collection::vec(any::<u64>(), 1..4)) {
        let u = mask::full(n);
        let gens: Vec<SubsetMask> = gens.into_iter().map(|g| g & u).collect();
        let family: Vec<SubsetMask> = fam.into_iter().map(|f| (f & u) | mask::full(n.div_ceil(2))).collect();
        let out = cross_middle_layer(&DownClosureOracle(&gens), n, &family, k).unwrap();
        let below = |fs: &[SubsetMask]| (0..=u).filter(|&x| fs.iter().any(|&f| x & !f == 0)).count() as u64;
        let comps: Vec<SubsetMask> = family.iter().map(|&f| u & !f).collect();
        prop_assert_eq!(out.counters.get("down_closure"), below(&family) + below(&comps));
    }

    #[test]
    fn colorings_agree_and_are_proper(n in 1usize..=10, p in 0.1f64..0.9, k in 1usize..=4, s in any::<u64>()) {
        let g = generate::random_graph(n, p, false, Seed(s));
        let truth = oracles::coloring(&g, k, &budget()).unwrap().is_some();
        prop_assert_eq!(k_coloring_via_cover(&g, k, false).unwrap().decision, truth);
        prop_assert_eq!(k_coloring_via_cover(&g, k, true).unwrap().decision, truth);
        let cap = s % 50;
        let out = three_coloring_15n(&g, Seed(s), Some(cap)).unwrap();
        let full = (1.5f64).powi(n as i32).ceil() as u64;
        prop_assert_eq!(out.counters.get("trials_budget"), cap.min(full));
        if let Some(c) = &out.coloring {
            prop_assert!(c.iter().all(|&x| x < 3));
            prop_assert!(g.edges().iter().all(|&(u, v, _)| c[u] != c[v]));
        }
    }

    #[test]
    fn maximal_independent_sets_match_filter(n in 0usize..=10, p in 0.0f64..1.0, s in any::<u64>()) {
        let g = generate::random_graph(n, p, false, Seed(s));
        let adj = g.neighbor_masks();
        let indep = |x: SubsetMask| mask::elements(x).all(|v| adj[v] & x == 0);
        let brute: Vec<SubsetMask> = (0..=mask::full(n))
            .filter(|&x| indep(x) && (0..n).all(|v| x >> v & 1 == 1 || !indep(x | 1 << v)))
            .collect();
        prop_assert_eq!(enumerate_maximal_independent_sets(&g), brute);
    }

    #[test]
    fn ham_counters(n in 2usize..=8, s in any::<u64>()) {
        let mut g = generate::random_graph(n, 0.5, true, Seed(s));
        g.set_arc(n - 1, 0, 1).unwrap();
        let (count, c) = ham_cycles_through_arc_exact(&g, n - 1, 0).unwrap();
        prop_assert_eq!(c.get("subsets"), 1u64 << (n - 1));
        prop_assert_eq!(count, oracles::ham_cycles_through_arc(&g, n - 1, 0, &budget()).unwrap().into());
        let u = generate::random_graph(n, 0.5, false, Seed(s));
        let out = undirected_ham_2n(&u, Seed(s), &PitConfig::default()).unwrap();
        if n % 2 == 0 && n >= 4 {
            prop_assert_eq!(out.counters.get("cuts"), 1u64 << (n - 1));
        }
        if out.decision {
            prop_assert!(oracles::ham_count(&u, &budget()).unwrap() > 0);
        }
    }

    #[test]
    fn subset_sum_solvers(w in prop::collection::vec(1u128..200, 1..=16), pick in any::<u64>(), hit in any::<bool>(), s in any::<u64>()) {
        let n = w.len();
        let t = if hit { mask::elements(pick & mask::full(n)).map(|i| w[i]).sum() } else { (pick % 1000) as u128 };
        let inst = WeightedInstance::subset_sum(w, t);
        let truth = oracles::subset_sum(&inst, &budget()).unwrap().is_some();
        let mitm = meet_in_middle(&inst).unwrap();
        prop_assert_eq!(mitm.witness.is_some(), truth);
        prop_assert_eq!(mitm.counters.get("list_l"), 1u64 << n.div_ceil(2));
        prop_assert_eq!(mitm.counters.get("list_r"), 1u64 << (n / 2));
        let rep = representation_method(&inst, Seed(s), 3).unwrap();
        if let Some(x) = rep.witness {
            prop_assert_eq!(inst.weight_of(x), t);
        }
    }

    #[test]
    fn residue_lists_match_filter(w in prop::collection::vec(0u128..1000, 0..=12), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]), r in any::<u64>(), card in 0usize..=6) {
        let n = w.len();
        let card = card.min(n);
        let spec = ResidueListSpec { p, residue: r % p, cardinality: card };
        let got = build_residue_list(&w, spec, &mut Counters::new()).unwrap();
        let mut brute: Vec<(u128, SubsetMask)> = mask::combinations(n, card)
            .map(|x| (mask::elements(x).map(|i| w[i]).sum::<u128>(), x))
            .filter(|&(sum, _)| sum % p as u128 == (r % p) as u128)
            .collect();
        brute.sort_unstable();
        prop_assert_eq!(got, brute);
    }
}
