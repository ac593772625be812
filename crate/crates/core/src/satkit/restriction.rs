use crate::instances::{CnfFormula, Lit};

/// A partial assignment: `None` is a star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    values: Vec<Option<bool>>,
}

impl Restriction {
    /// The restriction with `n` stars.
    pub fn stars(n: usize) -> Self {
        Restriction { values: vec![None; n] }
    }

    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        Restriction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.values[var]
    }

    pub fn set(&mut self, var: usize, value: Option<bool>) {
        self.values[var] = value;
    }

    pub fn star_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    pub fn values(&self) -> &[Option<bool>] {
        &self.values
    }
}

/// `φ|ρ`: clauses satisfied by `ρ` are dropped, literals falsified by `ρ`
/// are removed (possibly leaving an empty clause), and surviving clauses keep
/// their order.
pub fn apply_restriction(phi: &CnfFormula, rho: &Restriction) -> CnfFormula {
    assert_eq!(rho.len(), phi.num_vars(), "restriction length must match the formula");
    let clauses = phi
        .clauses()
        .iter()
        .filter(|c| !c.iter().any(|l| rho.get(l.var).is_some_and(|v| l.eval(v))))
        .map(|c| c.iter().copied().filter(|l| rho.get(l.var).is_none()).collect::<Vec<Lit>>())
        .collect();
    CnfFormula::new(phi.num_vars(), clauses).expect("restriction keeps the formula well-formed")
}

/// Sets the given literals' variables so that each literal is satisfied
/// (`true`) or falsified (`false`), on top of stars everywhere else.
pub(crate) fn restrict_literals(phi: &CnfFormula, assign: &[(Lit, bool)]) -> CnfFormula {
    let mut rho = Restriction::stars(phi.num_vars());
    for &(l, sat) in assign {
        rho.set(l.var, Some(l.satisfying_value() == sat));
    }
    apply_restriction(phi, &rho)
}
