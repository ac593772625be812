use std::collections::BTreeSet;

use super::matchings::{verify_narrow_cut_factorization, H2Convention};
use super::tutte::{HamOutcome, PitConfig, TutteMatrix};
use crate::algebra::{yates, Gf2k, Ring, SmallMatrixKind};
use crate::instances::{content_lines, Multigraph};
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result, Seed};

/// Largest `t` for which a supplied family is verified before use.
pub const VERIFY_MAX_T: usize = 8;

/// A cut function `{0,1,2}^(t/2-1) -> cuts of [t]`, stored as a table in
/// base-3 order with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NarrowCutFamily {
    pub t: usize,
    pub cuts: Vec<SubsetMask>,
}

impl NarrowCutFamily {
    pub fn new(t: usize, cuts: Vec<SubsetMask>) -> Result<Self> {
        if t < 2 || t % 2 == 1 || t > mask::MAX_UNIVERSE {
            return Err(Error::InvalidParameters(format!("t must be even in 2..=64, got {t}")));
        }
        let want = 3usize
            .checked_pow((t / 2 - 1) as u32)
            .ok_or_else(|| Error::InvalidParameters("3^(t/2-1) overflows".into()))?;
        if cuts.len() != want {
            return Err(Error::InvalidParameters(format!("expected {want} cuts, got {}", cuts.len())));
        }
        if let Some(&bad) = cuts.iter().find(|&&c| c & !mask::full(t) != 0) {
            return Err(Error::InvalidParameters(format!("{bad:#b} is not a cut of [{t}]")));
        }
        Ok(NarrowCutFamily { t, cuts })
    }

    /// Format: header `ncf <t>`, then one line per argument:
    /// `<base-3 digits>: <1-based vertices of one block>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let t: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["ncf", t] => t.parse().map_err(|_| Error::parse(ln, "bad t"))?,
            _ => return Err(Error::parse(ln, "expected `ncf <t>`")),
        };
        if t < 2 || t % 2 == 1 || t > 40 {
            return Err(Error::parse(ln, "t must be even in 2..=40"));
        }
        let m = t / 2 - 1;
        let mut cuts = vec![None; 3usize.pow(m as u32)];
        for (ln, line) in lines {
            let (digits, verts) = line.split_once(':').ok_or_else(|| Error::parse(ln, "expected `digits: vertices`"))?;
            let digits = digits.trim();
            if digits.len() != m || !digits.bytes().all(|b| (b'0'..=b'2').contains(&b)) {
                return Err(Error::parse(ln, format!("expected {m} base-3 digits")));
            }
            let idx = digits.bytes().fold(0usize, |acc, b| acc * 3 + (b - b'0') as usize);
            let mut cut = 0;
            for tok in verts.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::parse(ln, format!("bad vertex `{tok}`")))?;
                if v == 0 || v > t {
                    return Err(Error::parse(ln, format!("vertex {v} outside 1..={t}")));
                }
                cut |= 1u64 << (v - 1);
            }
            if cuts[idx].replace(cut).is_some() {
                return Err(Error::parse(ln, "argument listed twice"));
            }
        }
        let cuts: Option<Vec<SubsetMask>> = cuts.into_iter().collect();
        let cuts = cuts.ok_or_else(|| Error::parse(0, "some arguments have no cut"))?;
        Self::new(t, cuts)
    }

    pub fn render(&self) -> String {
        let m = self.t / 2 - 1;
        let mut out = format!("ncf {}\n", self.t);
        for (i, &c) in self.cuts.iter().enumerate() {
            let mut digits = vec![b'0'; m];
            let mut x = i;
            for d in digits.iter_mut().rev() {
                *d = b'0' + (x % 3) as u8;
                x /= 3;
            }
            let verts: Vec<String> = mask::elements(c).map(|v| (v + 1).to_string()).collect();
            out.push_str(&format!("{}: {}\n", String::from_utf8(digits).unwrap(), verts.join(" ")));
        }
        out
    }
}

/// Two-coloring of the underlying undirected graph with vertex 0 on the
/// left side, if one exists.
fn bipartition(g: &Multigraph) -> Option<SubsetMask> {
    let n = g.n();
    let adj: Vec<SubsetMask> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut sym = adj.clone();
    for u in 0..n {
        for v in mask::elements(adj[u]) {
            sym[v] |= 1 << u;
        }
    }
    let mut side = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for v in mask::elements(sym[u]) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        stack.push(v);
                    }
                    Some(sv) if sv == su => return None,
                    _ => {}
                }
            }
        }
    }
    Some((0..n).filter(|&v| side[v] == Some(false)).fold(0, |m, v| m | 1 << v))
}

fn false_with(counters: Counters, why: String) -> HamOutcome {
    HamOutcome {
        decision: false,
        counters,
        diagnostic: Some(why),
    }
}

/// Hamiltonicity with a narrow cut family: `l[a]` and `r[a]` are products
/// of Tutte determinants on both sides of the cut `C(a)`, combined as
/// `l^T Q^{⊗(n/2-1)} r` by Yates' algorithm. With `directed_bipartite`,
/// a directed bipartite graph is tested for a directed Hamiltonian cycle
/// by taking `x` on arcs leaving the side of vertex 1 and `y` on the rest.
/// One-sided.
///
/// Counters: `cuts` (per repetition, `3^(n/2-1)`), `repetitions_run`.
pub fn narrow_cut_hamiltonicity(
    g: &Multigraph,
    family: &NarrowCutFamily,
    seed: Seed,
    cfg: &PitConfig,
    directed_bipartite: bool,
) -> Result<HamOutcome> {
    let n = g.n();
    let mut counters = Counters::new();
    if directed_bipartite != g.is_directed() {
        return Err(Error::InvalidParameters(if directed_bipartite {
            "directed bipartite mode needs a directed graph".into()
        } else {
            "expected an undirected graph".into()
        }));
    }
    if n % 2 == 1 || n < 4 {
        return Ok(false_with(counters, format!("n = {n} must be even and at least 4")));
    }
    if family.t != n {
        return Err(Error::InvalidParameters(format!("cut family is for t = {}, graph has n = {n}", family.t)));
    }
    if n <= VERIFY_MAX_T {
        let report = verify_narrow_cut_factorization(n, &family.cuts, H2Convention::DoubleEdgeIsNotCycle)?;
        if let Some((i, j)) = report.first_mismatch {
            return Err(Error::Precondition(format!("cut family fails the factorization at ({i}, {j})")));
        }
    }
    let (x_edges, y_edges): (Vec<(usize, usize)>, Vec<(usize, usize)>) = if directed_bipartite {
        let Some(left) = bipartition(g) else {
            return Ok(false_with(counters, "underlying graph is not bipartite".into()));
        };
        if mask::size(left) * 2 != n {
            return Ok(false_with(counters, "bipartition sides differ in size".into()));
        }
        let mut x = BTreeSet::new();
        let mut y = BTreeSet::new();
        for (u, v, _) in g.edges() {
            let e = (u.min(v), u.max(v));
            if left >> u & 1 == 1 {
                x.insert(e);
            } else {
                y.insert(e);
            }
        }
        (x.into_iter().collect(), y.into_iter().collect())
    } else {
        let e: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(u, v, _)| u != v).map(|(u, v, _)| (u, v)).collect();
        (e.clone(), e)
    };
    let field = Gf2k::for_vertices(n);
    counters.set("field_bits", field.bits() as u64);
    let q = SmallMatrixKind::NarrowCutQ.build(&field);
    let m = n / 2 - 1;
    let u = mask::full(n);
    for r in 0..cfg.repetitions {
        counters.incr("repetitions_run");
        let mut rng = seed.derive(r as u64).rng();
        let x = TutteMatrix::random(n, &x_edges, &field, &mut rng);
        let y = TutteMatrix::random(n, &y_edges, &field, &mut rng);
        let mut l = Vec::with_capacity(family.cuts.len());
        let mut rv = Vec::with_capacity(family.cuts.len());
        for &c in &family.cuts {
            l.push(field.mul(&x.det_on(c), &x.det_on(u & !c)));
            rv.push(field.mul(&y.det_on(c), &y.det_on(u & !c)));
        }
        counters.set("cuts", family.cuts.len() as u64);
        let mut scratch = Counters::new();
        let qr = yates(&field, &q, m, &rv, &mut scratch)?;
        let res = l.iter().zip(&qr).fold(0u64, |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
        if res != 0 {
            return Ok(HamOutcome {
                decision: true,
                counters,
                diagnostic: None,
            });
        }
    }
    Ok(HamOutcome {
        decision: false,
        counters,
        diagnostic: None,
    })
}
