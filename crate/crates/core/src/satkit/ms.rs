use super::restriction::restrict_literals;
use super::SatOutcome;
use crate::instances::CnfFormula;
use crate::Counters;

/// Monien–Speckenmeyer branching: on the first unsatisfied clause
/// `l_1 ∨ .. ∨ l_p`, branch `i = 1..p` on `¬l_1, .., ¬l_{i-1}, l_i`.
///
/// Counters: `calls` (recursion nodes) and `leaves` (calls that do not
/// branch). The leaf count obeys `leaves <= fibonacci_step_bound(k, n)`.
pub fn monien_speckenmeyer(phi: &CnfFormula) -> SatOutcome {
    let mut counters = Counters::new();
    let mut partial: Vec<Option<bool>> = vec![None; phi.num_vars()];
    let sat = go(phi, &mut partial, 0, &mut counters);
    let witness = sat.then(|| partial.iter().map(|v| v.unwrap_or(false)).collect());
    SatOutcome {
        satisfiable: sat,
        witness,
        counters,
    }
}

fn go(phi: &CnfFormula, partial: &mut Vec<Option<bool>>, depth: u64, counters: &mut Counters) -> bool {
    counters.incr("calls");
    counters.max("max_depth", depth);
    let Some(clause) = phi.clauses().first() else {
        counters.incr("leaves");
        return true;
    };
    if phi.has_empty_clause() {
        counters.incr("leaves");
        return false;
    }
    for i in 0..clause.len() {
        let assign: Vec<_> = clause[..i]
            .iter()
            .map(|&l| (l, false))
            .chain(std::iter::once((clause[i], true)))
            .collect();
        let child = restrict_literals(phi, &assign);
        let saved: Vec<_> = assign.iter().map(|(l, _)| partial[l.var]).collect();
        for &(l, s) in &assign {
            partial[l.var] = Some(l.satisfying_value() == s);
        }
        if go(&child, partial, depth + 1, counters) {
            return true;
        }
        for ((l, _), old) in assign.iter().zip(saved) {
            partial[l.var] = old;
        }
    }
    false
}

/// `T'[n] = sum_{i=1..k} T'[max(n-i, 0)]` with `T'[0] = T'[1] = 1`
/// (saturating).
pub fn fibonacci_step_bound(k: usize, n: usize) -> u128 {
    let mut t = vec![1u128; n.max(1) + 1];
    for m in 2..=n {
        t[m] = (1..=k.max(1)).fold(0u128, |a, i| a.saturating_add(t[m.saturating_sub(i)]));
    }
    t[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = CnfFormula::from_dimacs(2, &[&[1, 2], &[]]).unwrap();
        let r = monien_speckenmeyer(&e);
        assert!(!r.satisfiable);
        assert_eq!(r.counters.get("max_depth"), 0);
        let none = CnfFormula::from_dimacs(3, &[]).unwrap();
        assert!(monien_speckenmeyer(&none).satisfiable);
        let f = CnfFormula::from_dimacs(3, &[&[1, 2], &[-1, 3], &[-3, -2]]).unwrap();
        let r = monien_speckenmeyer(&f);
        assert!(r.satisfiable && f.eval(r.witness.as_ref().unwrap()));
    }

    #[test]
    fn tribonacci() {
        let t: Vec<u128> = (0..8).map(|n| fibonacci_step_bound(3, n)).collect();
        assert_eq!(t, vec![1, 1, 3, 5, 9, 17, 31, 57]);
        assert_eq!(fibonacci_step_bound(2, 5), 8);
    }
}
