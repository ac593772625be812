use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::SatOutcome;
use crate::instances::CnfFormula;
use crate::{Counters, Seed};

/// Whether some satisfying assignment lies within Hamming distance `d` of
/// `x`: while `x` falsifies a clause, flip each of its variables in turn and
/// recurse with `d - 1`.
///
/// Counters: `calls`, and `leaves` (calls making no recursive call), which
/// is at most `k^d`.
pub fn local_search(phi: &CnfFormula, x: &[bool], d: usize) -> SatOutcome {
    let mut counters = Counters::new();
    let mut y = x.to_vec();
    let sat = ls(phi, &mut y, d, &mut counters);
    SatOutcome {
        satisfiable: sat,
        witness: sat.then_some(y),
        counters,
    }
}

fn ls(phi: &CnfFormula, x: &mut [bool], d: usize, counters: &mut Counters) -> bool {
    counters.incr("calls");
    let Some(ci) = phi.first_falsified(x) else {
        counters.incr("leaves");
        return true;
    };
    let clause = &phi.clauses()[ci];
    if d == 0 || clause.is_empty() {
        counters.incr("leaves");
        return false;
    }
    for l in clause {
        x[l.var] = !x[l.var];
        if ls(phi, x, d - 1, counters) {
            return true;
        }
        x[l.var] = !x[l.var];
    }
    false
}

/// `(d, trials)` for Schöning's algorithm on `n` variables and width `k`:
/// `d = ceil(n / (k + 1))` and `trials = ceil(2^n / C(n, d))`.
pub fn schoening_parameters(n: usize, k: usize) -> (usize, u128) {
    let d = n.div_ceil(k.max(1) + 1);
    let pow = BigUint::one() << n;
    let binom = (0..d).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1));
    let (q, r) = pow.div_rem(&binom);
    let trials = if r == BigUint::ZERO { q } else { q + 1u32 };
    (d, trials.to_u128().unwrap_or(u128::MAX))
}

/// Schöning's algorithm: up to `ceil(2^n / C(n, d))` local searches of
/// radius `d` around uniform random points. One-sided: `true` always comes
/// with a verified witness.
///
/// Counters: `trials_budget`, `trials_run`, `radius`, and the summed local
/// search `calls`.
pub fn schoening(phi: &CnfFormula, seed: Seed) -> SatOutcome {
    let n = phi.num_vars();
    let (d, trials) = schoening_parameters(n, phi.max_width());
    let mut counters = Counters::new();
    counters.set("trials_budget", trials.min(u64::MAX as u128) as u64);
    counters.set("radius", d as u64);
    counters.set("trials_run", 0);
    let mut rng = seed.rng();
    let mut t = 0u128;
    while t < trials {
        t += 1;
        counters.incr("trials_run");
        let x: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let r = local_search(phi, &x, d);
        counters.add("calls", r.counters.get("calls"));
        if r.satisfiable {
            let w = r.witness.expect("local search returns its witness");
            debug_assert!(phi.eval(&w));
            return SatOutcome {
                satisfiable: true,
                witness: Some(w),
                counters,
            };
        }
    }
    SatOutcome {
        satisfiable: false,
        witness: None,
        counters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_examples() {
        let f = CnfFormula::from_dimacs(2, &[&[1], &[2]]).unwrap();
        assert!(local_search(&f, &[true, true], 0).satisfiable);
        assert!(!local_search(&f, &[true, false], 0).satisfiable);
        assert!(local_search(&f, &[false, false], 2).satisfiable);
        assert!(!local_search(&f, &[false, false], 1).satisfiable);
    }

    #[test]
    fn parameters() {
        assert_eq!(schoening_parameters(9, 3), (3, 7));
        assert_eq!(schoening_parameters(12, 3), (3, 19));
        assert_eq!(schoening_parameters(1, 1), (1, 2));
    }

    #[test]
    fn unsatisfiable_is_false() {
        let f = CnfFormula::from_dimacs(1, &[&[1], &[-1]]).unwrap();
        for s in 0..10 {
            let r = schoening(&f, Seed(s));
            assert!(!r.satisfiable);
            assert_eq!(r.counters.get("trials_run"), r.counters.get("trials_budget"));
        }
    }
}
