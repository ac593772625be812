
use crate::algebra::{determinant, Gf2k, Matrix, Ring};
use crate::instances::Multigraph;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result, Seed};

/// Symbolic Tutte matrix evaluated at random field elements. Over a field
/// of characteristic 2 the skew signs vanish, so the matrix is symmetric.
#[derive(Debug, Clone)]
pub struct TutteMatrix {
    pub field: Gf2k,
    pub matrix: Matrix<u64>,
    /// `(i, j, x_ij)` for each edge with `i < j`.
    pub assignment: Vec<(usize, usize, u64)>,
}

impl TutteMatrix {
    /// Random evaluation with support `edges` (pairs `i < j`). Zero values
    /// are redrawn so the support matches the edge set exactly.
    pub fn random(n: usize, edges: &[(usize, usize)], field: &Gf2k, rng: &mut crate::rng::Rng) -> Self {
        let mut matrix = Matrix::filled(n, n, 0u64);
        let mut assignment = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            let mut x = field.random(rng);
            while x == 0 {
                x = field.random(rng);
            }
            matrix.set(i, j, x);
            matrix.set(j, i, x);
            assignment.push((i.min(j), i.max(j), x));
        }
        TutteMatrix {
            field: field.clone(),
            matrix,
            assignment,
        }
    }

    /// Determinant of the principal submatrix on `set`.
    pub fn det_on(&self, set: SubsetMask) -> u64 {
        let idx: Vec<usize> = mask::elements(set).collect();
        determinant(&self.field, &self.matrix.principal(&idx)).expect("square")
    }

    pub fn det(&self) -> u64 {
        determinant(&self.field, &self.matrix).expect("square")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PitConfig {
    /// Independent evaluations; accept if any is nonzero.
    pub repetitions: usize,
}

impl Default for PitConfig {
    fn default() -> Self {
        Self { repetitions: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamOutcome {
    pub decision: bool,
    pub counters: Counters,
    pub diagnostic: Option<String>,
}

fn undirected_edges(g: &Multigraph) -> Result<Vec<(usize, usize)>> {
    if g.is_directed() {
        return Err(Error::InvalidParameters("expected an undirected graph".into()));
    }
    Ok(g.edges().into_iter().filter(|&(u, v, _)| u != v).map(|(u, v, _)| (u, v)).collect())
}

/// Randomized perfect matching test: the Tutte determinant at random
/// points of `GF(2^k)`, `k = ⌈lg 8n⌉`. Never accepts a graph without a
/// perfect matching.
pub fn perfect_matching_test(g: &Multigraph, seed: Seed, cfg: &PitConfig) -> Result<HamOutcome> {
    let edges = undirected_edges(g)?;
    let n = g.n();
    let field = Gf2k::for_vertices(n);
    let mut counters = Counters::new();
    counters.set("field_bits", field.bits() as u64);
    for r in 0..cfg.repetitions {
        counters.incr("repetitions_run");
        let mut rng = seed.derive(r as u64).rng();
        let t = TutteMatrix::random(n, &edges, &field, &mut rng);
        if t.det() != 0 {
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

/// The `2^n` Hamiltonicity test: sums, over the `2^(n-1)` cuts `C ∋ v_1`,
/// the product of the four Tutte determinants on `C` and `V \ C` for two
/// independent random evaluations `x` and `y`. One-sided.
///
/// Counters: `cuts` (per repetition, `2^(n-1)`), `repetitions_run`,
/// `determinants`.
pub fn undirected_ham_2n(g: &Multigraph, seed: Seed, cfg: &PitConfig) -> Result<HamOutcome> {
    let edges = undirected_edges(g)?;
    let n = g.n();
    let mut counters = Counters::new();
    if n % 2 == 1 || n < 4 {
        let why = if n % 2 == 1 {
            format!("n = {n} is odd; the cut sum needs perfect matchings on even n")
        } else {
            format!("n = {n} is below 4")
        };
        return Ok(HamOutcome {
            decision: false,
            counters,
            diagnostic: Some(why),
        });
    }
    let field = Gf2k::for_vertices(n);
    counters.set("field_bits", field.bits() as u64);
    let u = mask::full(n);
    for r in 0..cfg.repetitions {
        counters.incr("repetitions_run");
        let mut rng = seed.derive(r as u64).rng();
        let x = TutteMatrix::random(n, &edges, &field, &mut rng);
        let y = TutteMatrix::random(n, &edges, &field, &mut rng);
        let mut sum = 0u64;
        let mut cuts = 0u64;
        for rest in 0..1u64 << (n - 1) {
            let c = 1 | rest << 1;
            cuts += 1;
            let mut term = x.det_on(c);
            counters.incr("determinants");
            for (m, s) in [(&x, u & !c), (&y, c), (&y, u & !c)] {
                if term == 0 {
                    break;
                }
                term = field.mul(&term, &m.det_on(s));
                counters.incr("determinants");
            }
            sum = field.add(&sum, &term);
        }
        counters.set("cuts", cuts);
        if sum != 0 {
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


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_examples() {
        let k2 = Multigraph::undirected(2, &[(0, 1)]).unwrap();
        assert!(perfect_matching_test(&k2, Seed(0), &PitConfig::default()).unwrap().decision);
        let p3 = Multigraph::undirected(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!perfect_matching_test(&p3, Seed(0), &PitConfig::default()).unwrap().decision);
    }

    #[test]
    fn ham_examples() {
        let cfg = PitConfig::default();
        let c4 = Multigraph::cycle(4);
        let out = undirected_ham_2n(&c4, Seed(1), &cfg).unwrap();
        assert!(out.decision);
        assert_eq!(out.counters.get("cuts"), 8);
        let star = Multigraph::undirected(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!undirected_ham_2n(&star, Seed(1), &cfg).unwrap().decision);
        let c5 = Multigraph::cycle(5);
        let odd = undirected_ham_2n(&c5, Seed(1), &cfg).unwrap();
        assert!(!odd.decision);
        assert!(odd.diagnostic.is_some());
        assert!(undirected_ham_2n(&Multigraph::petersen(), Seed(2), &cfg).map(|o| !o.decision).unwrap());
    }

    #[test]
    fn support_matches_edges() {
        let g = Multigraph::cycle(6);
        let edges = undirected_edges(&g).unwrap();
        let f = Gf2k::for_vertices(6);
        let t = TutteMatrix::random(6, &edges, &f, &mut Seed(5).rng());
        for i in 0..6 {
            assert_eq!(*t.matrix.get(i, i), 0);
            for j in 0..6 {
                assert_eq!(*t.matrix.get(i, j) != 0, g.has_edge(i, j));
                assert_eq!(t.matrix.get(i, j), t.matrix.get(j, i));
            }
        }
    }
}
