use num_bigint::BigInt;
use rand::Rng as _;

use crate::algebra::{determinant, determinant_exact_int, Matrix, Ring, Zp};
use crate::instances::Multigraph;
use crate::{Counters, Error, Result, Seed};

/// Largest `n` for the exact inclusion–exclusion count.
pub const EXACT_MAX_N: usize = 16;
/// Largest `n` for counting modulo `p`.
pub const MOD_P_MAX_N: usize = 20;

fn as_directed(g: &Multigraph) -> Result<Multigraph> {
    let d = if g.is_directed() { g.clone() } else { g.to_directed() };
    if (0..d.n()).any(|v| d.mult(v, v) > 0) {
        return Err(Error::Precondition("graph has a loop".into()));
    }
    Ok(d)
}

fn arc_count(a: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for (u, row) in a.iter().enumerate() {
        for (v, &m) in row.iter().enumerate() {
            arcs.extend(std::iter::repeat_n((u, v), m as usize));
        }
    }
    arcs
}

fn adjacency(d: &Multigraph) -> Vec<Vec<i64>> {
    let n = d.n();
    (0..n).map(|u| (0..n).map(|v| d.mult(u, v) as i64).collect()).collect()
}

fn laplacian_of(a: &[Vec<i64>]) -> Matrix<i64> {
    let n = a.len();
    Matrix::from_fn(n, n, |u, x| if u == x { (0..n).map(|v| a[v][u]).sum() } else { -a[u][x] })
}

/// `L = D - A` with `D` the in-degree diagonal; undirected graphs are
/// read as bidirected.
pub fn laplacian(g: &Multigraph) -> Result<Matrix<i64>> {
    Ok(laplacian_of(&adjacency(&as_directed(g)?)))
}

/// `I[u, (v, w)] = [u = w]`, one column per arc copy in row-major order.
pub fn in_incidence(g: &Multigraph) -> Result<Matrix<i64>> {
    let d = as_directed(g)?;
    let arcs = arc_count(&adjacency(&d));
    Ok(Matrix::from_fn(d.n(), arcs.len(), |u, e| i64::from(arcs[e].1 == u)))
}

/// `O[u, (v, w)] = [u = v]`, columns as in [`in_incidence`].
pub fn out_incidence(g: &Multigraph) -> Result<Matrix<i64>> {
    let d = as_directed(g)?;
    let arcs = arc_count(&adjacency(&d));
    Ok(Matrix::from_fn(d.n(), arcs.len(), |u, e| i64::from(arcs[e].0 == u)))
}

fn deleted(l: &Matrix<i64>, s: usize) -> Matrix<i64> {
    let idx: Vec<usize> = (0..l.rows()).filter(|&v| v != s).collect();
    l.principal(&idx)
}

fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        return Err(Error::InvalidParameters(format!("vertex {} outside 1..={n}", v + 1)));
    }
    Ok(())
}

/// Spanning out-branchings rooted at `s`, as `det(L^{-s})`.
pub fn out_branching_count(g: &Multigraph, s: usize) -> Result<BigInt> {
    check_vertex(g.n(), s)?;
    determinant_exact_int(&deleted(&laplacian(g)?, s))
}

/// Hamiltonian cycles through the arc `(t, s)`:
/// `sum over F ⊆ V \ {t} of (-1)^|F| det(L^{-s} of G - out(F))`.
///
/// Counters: `subsets` (`2^(n-1)`).
pub fn ham_cycles_through_arc_exact(g: &Multigraph, t: usize, s: usize) -> Result<(BigInt, Counters)> {
    let n = g.n();
    check_vertex(n, t)?;
    check_vertex(n, s)?;
    if n > EXACT_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {EXACT_MAX_N}")));
    }
    let d = as_directed(g)?;
    if d.mult(t, s) != 1 {
        return Err(Error::Precondition(format!(
            "need exactly one arc {} -> {}, found {}",
            t + 1,
            s + 1,
            d.mult(t, s)
        )));
    }
    let a = adjacency(&d);
    let others: Vec<usize> = (0..n).filter(|&v| v != t).collect();
    let mut total = BigInt::from(0);
    let mut counters = Counters::new();
    for bits in 0..1u64 << others.len() {
        let mut af = a.clone();
        for (i, &v) in others.iter().enumerate() {
            if bits >> i & 1 == 1 {
                af[v].iter_mut().for_each(|x| *x = 0);
            }
        }
        let det = determinant_exact_int(&deleted(&laplacian_of(&af), s))?;
        if bits.count_ones() % 2 == 0 {
            total += det;
        } else {
            total -= det;
        }
        counters.incr("subsets");
    }
    Ok((total, counters))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModPConfig {
    /// Skip subsets with a vanishing diagonal entry.
    pub skip: bool,
}

impl Default for ModPConfig {
    fn default() -> Self {
        Self { skip: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPOutcome {
    pub residue: u64,
    pub counters: Counters,
}

/// The number of directed Hamiltonian cycles modulo a prime `p`. With
/// `s = v_1`, sums over every in-arc `(t, s)` the inclusion–exclusion
/// formula, after replacing the arcs `t -> v` (`v ≠ s`) by a random number
/// `r_v ∈ [0, p)` of copies. Subsets `F` are visited in Gray-code order
/// while the in-degree sums are maintained incrementally; a determinant is
/// computed only if no `v ∈ F \ {s}` has in-degree `≡ 0 (mod p)` (or always,
/// with skipping off).
///
/// Counters: `subsets`, `determinants`, `skipped`.
pub fn count_ham_cycles_mod_p(g: &Multigraph, p: u64, seed: Seed, cfg: &ModPConfig) -> Result<ModPOutcome> {
    let zp = Zp::new(p)?;
    let n = g.n();
    if n > MOD_P_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {MOD_P_MAX_N}")));
    }
    let d = as_directed(g)?;
    let mut counters = Counters::new();
    if n < 2 {
        return Ok(ModPOutcome { residue: 0, counters });
    }
    let s = 0;
    let base = adjacency(&d);
    let mut residue = 0u64;
    for t in 1..n {
        let arcs_ts = d.mult(t, s) % p;
        if arcs_ts == 0 {
            continue;
        }
        let mut rng = seed.derive(t as u64).rng();
        let mut a: Vec<Vec<u64>> = base.iter().map(|r| r.iter().map(|&x| x as u64 % p).collect()).collect();
        for v in 0..n {
            if v != s && v != t {
                a[t][v] = rng.random_range(0..p);
            }
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != t).collect();
        // in_sum[v] = sum over u outside F of a[u][v]
        let mut in_sum: Vec<u64> = (0..n).map(|v| (0..n).fold(0, |acc, u| zp.add(&acc, &a[u][v]))).collect();
        let mut in_f = vec![false; n];
        let mut sum = 0u64;
        let mut gray = 0u64;
        for step in 0..1u64 << others.len() {
            if step > 0 {
                let i = step.trailing_zeros() as usize;
                gray ^= 1 << i;
                let u = others[i];
                in_f[u] = !in_f[u];
                for v in 0..n {
                    in_sum[v] = if in_f[u] { zp.sub(&in_sum[v], &a[u][v]) } else { zp.add(&in_sum[v], &a[u][v]) };
                }
            }
            counters.incr("subsets");
            if cfg.skip && (0..n).any(|v| v != s && in_f[v] && in_sum[v] == 0) {
                counters.incr("skipped");
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&v| v != s).collect();
            let m = Matrix::from_fn(idx.len(), idx.len(), |i, j| {
                let (u, x) = (idx[i], idx[j]);
                if u == x {
                    in_sum[u]
                } else if in_f[u] {
                    0
                } else {
                    zp.neg(&a[u][x])
                }
            });
            counters.incr("determinants");
            let det = determinant(&zp, &m)?;
            sum = if gray.count_ones().is_multiple_of(2) { zp.add(&sum, &det) } else { zp.sub(&sum, &det) };
        }
        residue = zp.add(&residue, &zp.mul(&sum, &arcs_ts));
    }
    Ok(ModPOutcome { residue, counters })
}
