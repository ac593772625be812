use crate::algebra::{yates, Ring, SmallMatrixKind, Zp};
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Largest `t` for which `H_t` and `S_t` are built.
pub const MAX_T: usize = 10;

/// A perfect matching of `K_t` as pairs `(i, j)` with `i < j`, sorted.
pub type Matching = Vec<(usize, usize)>;

/// All perfect matchings of `K_t`: vertex `0` paired with each partner
/// in increasing order, then recursively.
pub fn perfect_matchings(t: usize) -> Vec<Matching> {
    fn go(free: SubsetMask, cur: &mut Matching, out: &mut Vec<Matching>) {
        if free == 0 {
            out.push(cur.clone());
            return;
        }
        let i = free.trailing_zeros() as usize;
        let rest = free & !(1 << i);
        for j in mask::elements(rest) {
            cur.push((i, j));
            go(rest & !(1 << j), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t.is_multiple_of(2) {
        go(mask::full(t), &mut Vec::new(), &mut out);
    }
    out
}

/// The `2^(t-1)` cuts of `[t]`, each given by its block containing vertex 1.
pub fn all_cuts(t: usize) -> Vec<SubsetMask> {
    if t == 0 {
        return vec![0];
    }
    (0..1u64 << (t - 1)).map(|r| 1 | r << 1).collect()
}

/// Whether every edge of `m` lies inside `cut` or avoids it.
pub fn splits(m: &Matching, cut: SubsetMask) -> bool {
    m.iter().all(|&(i, j)| (cut >> i & 1) == (cut >> j & 1))
}

/// Whether the double edge on two vertices counts as a Hamiltonian cycle
/// (only matters for `t = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H2Convention {
    DoubleEdgeIsCycle,
    DoubleEdgeIsNotCycle,
}

fn is_ham_cycle(a: &Matching, b: &Matching, t: usize, conv: H2Convention) -> bool {
    if t == 2 {
        return conv == H2Convention::DoubleEdgeIsCycle;
    }
    let mut partner_a = vec![0; t];
    let mut partner_b = vec![0; t];
    for &(i, j) in a {
        partner_a[i] = j;
        partner_a[j] = i;
    }
    for &(i, j) in b {
        partner_b[i] = j;
        partner_b[j] = i;
    }
    // walk alternating edges from vertex 0
    let mut v = 0;
    let mut len = 0;
    loop {
        v = partner_b[partner_a[v]];
        len += 2;
        if v == 0 {
            break;
        }
    }
    len == t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingsConnectivityData {
    pub t: usize,
    pub matchings: Vec<Matching>,
    pub cuts: Vec<SubsetMask>,
    /// `H_t` over GF(2), rows and columns in `matchings` order.
    pub h: Vec<Vec<u8>>,
    /// `S_t` over GF(2), columns in `cuts` order.
    pub s: Vec<Vec<u8>>,
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 || t % 2 == 1 || t > MAX_T {
        return Err(Error::InvalidParameters(format!("t must be even in 2..={MAX_T}, got {t}")));
    }
    Ok(())
}

impl MatchingsConnectivityData {
    pub fn build(t: usize, conv: H2Convention) -> Result<Self> {
        check_t(t)?;
        let matchings = perfect_matchings(t);
        let cuts = all_cuts(t);
        let h = matchings
            .iter()
            .map(|a| matchings.iter().map(|b| u8::from(is_ham_cycle(a, b, t, conv))).collect())
            .collect();
        let s = matchings
            .iter()
            .map(|a| cuts.iter().map(|&c| u8::from(splits(a, c))).collect())
            .collect();
        Ok(MatchingsConnectivityData {
            t,
            matchings,
            cuts,
            h,
            s,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub t: usize,
    pub convention: H2Convention,
    /// Inner dimension of the factorization.
    pub width: usize,
    pub equal: bool,
    /// First differing entry `(row, column)` in matching order.
    pub first_mismatch: Option<(usize, usize)>,
}

fn pack(row: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; row.len().div_ceil(64)];
    for (i, &b) in row.iter().enumerate() {
        if b & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

fn parity_dot(a: &[u64], b: &[u64]) -> u8 {
    (a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() & 1) as u8
}

fn compare(t: usize, conv: H2Convention, width: usize, h: &[Vec<u8>], prod: impl Fn(usize, usize) -> u8) -> FactorizationReport {
    let mut first_mismatch = None;
    'outer: for (i, row) in h.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if prod(i, j) != v {
                first_mismatch = Some((i, j));
                break 'outer;
            }
        }
    }
    FactorizationReport {
        t,
        convention: conv,
        width,
        equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Checks `H_t = S_t S_t^T` over GF(2).
pub fn verify_factorization_char2(t: usize, conv: H2Convention) -> Result<FactorizationReport> {
    let d = MatchingsConnectivityData::build(t, conv)?;
    let rows: Vec<Vec<u64>> = d.s.iter().map(|r| pack(r)).collect();
    Ok(compare(t, conv, d.cuts.len(), &d.h, |i, j| parity_dot(&rows[i], &rows[j])))
}

fn check_family(t: usize, family: &[SubsetMask]) -> Result<usize> {
    check_t(t)?;
    let m = t / 2 - 1;
    let want = 3usize.pow(m as u32);
    if family.len() != want {
        return Err(Error::InvalidParameters(format!(
            "cut family for t = {t} needs 3^{m} = {want} cuts, got {}",
            family.len()
        )));
    }
    if let Some(&bad) = family.iter().find(|&&c| c & !mask::full(t) != 0) {
        return Err(Error::InvalidParameters(format!("{bad:#b} is not a cut of [{t}]")));
    }
    Ok(m)
}

/// Checks `H_t = S_t[·, C] Q^{⊗(t/2-1)} S_t[·, C]^T` over GF(2) for a cut
/// family indexed in base 3 with the first coordinate most significant.
pub fn verify_narrow_cut_factorization(
    t: usize,
    family: &[SubsetMask],
    conv: H2Convention,
) -> Result<FactorizationReport> {
    let m = check_family(t, family)?;
    let matchings = perfect_matchings(t);
    let h: Vec<Vec<u8>> = matchings
        .iter()
        .map(|a| matchings.iter().map(|b| u8::from(is_ham_cycle(a, b, t, conv))).collect())
        .collect();
    let gf2 = Zp::new(2)?;
    let q = SmallMatrixKind::NarrowCutQ.build(&gf2);
    let mut scratch = Counters::new();
    let sc: Vec<Vec<u64>> = matchings
        .iter()
        .map(|a| family.iter().map(|&c| u64::from(splits(a, c))).collect())
        .collect();
    let left: Vec<Vec<u64>> = sc
        .iter()
        .map(|row| yates(&gf2, &q, m, row, &mut scratch))
        .collect::<Result<_>>()?;
    let prod = |i: usize, j: usize| {
        let mut acc = 0;
        for (x, y) in left[i].iter().zip(&sc[j]) {
            acc = gf2.add(&acc, &gf2.mul(x, y));
        }
        acc as u8
    };
    Ok(compare(t, conv, family.len(), &h, prod))
}

/// Exhaustive search for a valid narrow cut family, for `t` in `{2, 4}`.
pub fn find_narrow_cut_family(t: usize, conv: H2Convention) -> Result<Option<Vec<SubsetMask>>> {
    if t != 2 && t != 4 {
        return Err(Error::InvalidParameters(format!("exhaustive search supports t in {{2, 4}}, got {t}")));
    }
    let cuts = all_cuts(t);
    let len = 3usize.pow((t / 2 - 1) as u32);
    let total = cuts.len().pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let family: Vec<SubsetMask> = (0..len)
            .map(|_| {
                let x = cuts[c % cuts.len()];
                c /= cuts.len();
                x
            })
            .collect();
        if verify_narrow_cut_factorization(t, &family, conv)?.equal {
            return Ok(Some(family));
        }
    }
    Ok(None)
}

/// Verified cut families for `t = 4` and `t = 6`.
pub fn known_narrow_cut_family(t: usize) -> Option<Vec<SubsetMask>> {
    match t {
        4 => Some(vec![0b0011, 0b0101, 0b1001]),
        6 => Some(vec![
            0b011011, 0b101011, 0b000011, 0b011101, 0b101101, 0b000101, 0b100111, 0b010111, 0b111111,
        ]),
        _ => None,
    }
}
