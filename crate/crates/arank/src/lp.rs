//! Exact rational linear programming: two-phase primal simplex with Bland's
//! rule. Deterministic by construction; infeasible outcomes carry a Farkas
//! certificate so callers get supporting functionals for free.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct LinRow {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

/// vars are free unless flagged nonneg; `eq` rows are a.x = b, `ge` rows are
/// a.x >= b.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub vars: usize,
    pub nonneg: Vec<bool>,
    pub eq: Vec<LinRow>,
    pub ge: Vec<LinRow>,
    pub objective: Option<(Vec<Rat>, Sense)>,
}

/// Infeasibility certificate: eq multipliers are free, ge multipliers are
/// nonnegative, the combined row vanishes on free vars, is <= 0 on nonneg
/// vars, and the combined rhs is > 0.
#[derive(Clone, Debug)]
pub struct FarkasCert {
    pub eq: Vec<Rat>,
    pub ge: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Feasible(Vec<Rat>),
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible(FarkasCert),
    Unbounded,
}

impl LpProblem {
    pub fn new(vars: usize) -> Self {
        LpProblem {
            vars,
            nonneg: vec![false; vars],
            eq: Vec::new(),
            ge: Vec::new(),
            objective: None,
        }
    }

    pub fn new_nonneg(vars: usize) -> Self {
        let mut p = LpProblem::new(vars);
        p.nonneg = vec![true; vars];
        p
    }

    pub fn eq_row(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.vars);
        self.eq.push(LinRow { coeffs, rhs });
    }

    pub fn ge_row(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.vars);
        self.ge.push(LinRow { coeffs, rhs });
    }

    pub fn maximize(&mut self, coeffs: Vec<Rat>) {
        assert_eq!(coeffs.len(), self.vars);
        self.objective = Some((coeffs, Sense::Max));
    }

    pub fn minimize(&mut self, coeffs: Vec<Rat>) {
        assert_eq!(coeffs.len(), self.vars);
        self.objective = Some((coeffs, Sense::Min));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Col {
    Var(usize, i8),
    Slack(usize),
    Art(usize),
}

struct Tableau {
    cols: Vec<Col>,
    t: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    obj: Vec<Rat>,
    objval: Rat,
    cost: Vec<Rat>,
    row_sign: Vec<bool>, // true: original row was negated
    n_eq: usize,
}

pub fn lp_solve(p: &LpProblem) -> LpOutcome {
    debug_assert_eq!(p.nonneg.len(), p.vars);
    let mut tab = build_tableau(p);
    price_out(&mut tab);
    pivot_until_optimal(&mut tab, true);
    if tab.objval.is_positive() {
        let cert = extract_farkas(&tab);
        debug_assert!(validate_farkas(p, &cert), "invalid Farkas certificate");
        return LpOutcome::Infeasible(cert);
    }
    let Some((c, sense)) = &p.objective else {
        let x = extract_x(p, &tab);
        debug_assert!(validate_point(p, &x), "witness violates constraints");
        return LpOutcome::Feasible(x);
    };
    drive_out_artificials(&mut tab);
    // phase 2: minimize internal cost (negated for Max)
    for (j, col) in tab.cols.iter().enumerate() {
        tab.cost[j] = match col {
            Col::Var(v, s) => {
                let base = &c[*v] * Rat::from_integer((*s as i64).into());
                match sense {
                    Sense::Max => -base,
                    Sense::Min => base,
                }
            }
            _ => Rat::zero(),
        };
    }
    price_out(&mut tab);
    if !pivot_until_optimal(&mut tab, false) {
        return LpOutcome::Unbounded;
    }
    let x = extract_x(p, &tab);
    debug_assert!(validate_point(p, &x), "witness violates constraints");
    let value = match sense {
        Sense::Max => -tab.objval.clone(),
        Sense::Min => tab.objval.clone(),
    };
    debug_assert_eq!(
        value,
        x.iter()
            .zip(c)
            .map(|(xi, ci)| xi * ci)
            .fold(Rat::zero(), |a, v| a + v)
    );
    LpOutcome::Optimal { x, value }
}

fn build_tableau(p: &LpProblem) -> Tableau {
    let n_eq = p.eq.len();
    let n_rows = n_eq + p.ge.len();
    let mut cols = Vec::new();
    for v in 0..p.vars {
        cols.push(Col::Var(v, 1));
        if !p.nonneg[v] {
            cols.push(Col::Var(v, -1));
        }
    }
    let slack_base = cols.len();
    for g in 0..p.ge.len() {
        cols.push(Col::Slack(g));
    }
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(n_rows);
    let mut b: Vec<Rat> = Vec::with_capacity(n_rows);
    let mut row_sign = vec![false; n_rows];
    for (i, row) in p.eq.iter().chain(p.ge.iter()).enumerate() {
        let neg = row.rhs.is_negative();
        row_sign[i] = neg;
        let mut tr: Vec<Rat> = Vec::with_capacity(cols.len());
        for col in &cols {
            let val = match col {
                Col::Var(v, s) => {
                    let mut x = row.coeffs[*v].clone();
                    if *s < 0 {
                        x = -x;
                    }
                    x
                }
                Col::Slack(g) => {
                    if *g + n_eq == i {
                        -Rat::one()
                    } else {
                        Rat::zero()
                    }
                }
                Col::Art(_) => unreachable!(),
            };
            tr.push(if neg { -val } else { val });
        }
        t.push(tr);
        b.push(if neg { -row.rhs.clone() } else { row.rhs.clone() });
    }
    // initial basis: negated ge rows start on their slack (+1 there), all
    // other rows get an artificial variable
    let mut basis = vec![usize::MAX; n_rows];
    for i in 0..n_rows {
        if i >= n_eq && row_sign[i] {
            basis[i] = slack_base + (i - n_eq);
        }
    }
    let mut cost = vec![Rat::zero(); cols.len()];
    for i in 0..n_rows {
        if basis[i] != usize::MAX {
            continue;
        }
        let j = cols.len();
        cols.push(Col::Art(i));
        cost.push(Rat::one());
        for (r, tr) in t.iter_mut().enumerate() {
            tr.push(if r == i { Rat::one() } else { Rat::zero() });
        }
        basis[i] = j;
    }
    let obj = vec![Rat::zero(); cols.len()];
    Tableau {
        cols,
        t,
        b,
        basis,
        obj,
        objval: Rat::zero(),
        cost,
        row_sign,
        n_eq,
    }
}

/// Recomputes reduced costs and the objective value for the current basis.
fn price_out(tab: &mut Tableau) {
    tab.obj = tab.cost.clone();
    tab.objval = Rat::zero();
    for i in 0..tab.t.len() {
        let cb = tab.cost[tab.basis[i]].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..tab.cols.len() {
            let d = &cb * &tab.t[i][j];
            tab.obj[j] -= d;
        }
        tab.objval += &cb * &tab.b[i];
    }
}

/// Bland pivoting to optimality of the current (minimization) objective.
/// Returns false when unbounded. `phase1` excludes nothing; phase 2 excludes
/// artificial columns from entering.
fn pivot_until_optimal(tab: &mut Tableau, phase1: bool) -> bool {
    loop {
        let mut entering = None;
        for j in 0..tab.cols.len() {
            if !phase1 && matches!(tab.cols[j], Col::Art(_)) {
                continue;
            }
            if tab.obj[j].is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return true;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..tab.t.len() {
            if !tab.t[i][j].is_positive() {
                continue;
            }
            let ratio = &tab.b[i] / &tab.t[i][j];
            let better = match &best {
                None => true,
                Some(r) => {
                    ratio < *r || (ratio == *r && tab.basis[i] < tab.basis[leave.unwrap()])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(r) = leave else {
            assert!(!phase1, "phase-1 objective is bounded below");
            return false;
        };
        pivot(tab, r, j);
    }
}

fn pivot(tab: &mut Tableau, r: usize, j: usize) {
    let piv = tab.t[r][j].clone();
    for x in tab.t[r].iter_mut() {
        *x = &*x / &piv;
    }
    tab.b[r] = &tab.b[r] / &piv;
    for i in 0..tab.t.len() {
        if i == r || tab.t[i][j].is_zero() {
            continue;
        }
        let f = tab.t[i][j].clone();
        for k in 0..tab.cols.len() {
            let d = &f * &tab.t[r][k];
            tab.t[i][k] -= d;
        }
        let d = &f * &tab.b[r];
        tab.b[i] -= d;
    }
    if !tab.obj[j].is_zero() {
        let f = tab.obj[j].clone();
        for k in 0..tab.cols.len() {
            let d = &f * &tab.t[r][k];
            tab.obj[k] -= d;
        }
        tab.objval += &f * &tab.b[r];
    }
    tab.basis[r] = j;
}

/// After a zero phase-1 optimum, pivot artificial variables out of the basis;
/// rows that cannot be cleared are redundant and dropped.
fn drive_out_artificials(tab: &mut Tableau) {
    let mut drop_rows = Vec::new();
    for i in 0..tab.t.len() {
        if !matches!(tab.cols[tab.basis[i]], Col::Art(_)) {
            continue;
        }
        debug_assert!(tab.b[i].is_zero());
        let piv = (0..tab.cols.len())
            .find(|&j| !matches!(tab.cols[j], Col::Art(_)) && !tab.t[i][j].is_zero());
        match piv {
            Some(j) => pivot(tab, i, j),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        tab.t.remove(i);
        tab.b.remove(i);
        tab.basis.remove(i);
    }
}

fn extract_x(p: &LpProblem, tab: &Tableau) -> Vec<Rat> {
    let mut x = vec![Rat::zero(); p.vars];
    for (i, &bj) in tab.basis.iter().enumerate() {
        if let Col::Var(v, s) = tab.cols[bj] {
            if s > 0 {
                x[v] += tab.b[i].clone();
            } else {
                x[v] -= tab.b[i].clone();
            }
        }
    }
    x
}

fn extract_farkas(tab: &Tableau) -> FarkasCert {
    // dual values y_i of the phase-1 LP, per normalized row: from the reduced
    // cost of that row's artificial column (y = 1 - redcost) or its slack
    // column (slack +1 after negation: y = -redcost).
    let n_rows = tab.row_sign.len();
    let mut y = vec![Rat::zero(); n_rows];
    for (j, col) in tab.cols.iter().enumerate() {
        match col {
            Col::Art(i) => y[*i] = Rat::one() - tab.obj[j].clone(),
            Col::Slack(g) => {
                let i = tab.n_eq + g;
                if tab.row_sign[i] {
                    y[i] = -tab.obj[j].clone();
                }
            }
            Col::Var(..) => {}
        }
    }
    // undo row negation to get multipliers for the original rows
    for (i, &neg) in tab.row_sign.iter().enumerate() {
        if neg {
            y[i] = -y[i].clone();
        }
    }
    FarkasCert {
        eq: y[..tab.n_eq].to_vec(),
        ge: y[tab.n_eq..].to_vec(),
    }
}

pub fn validate_farkas(p: &LpProblem, cert: &FarkasCert) -> bool {
    if cert.eq.len() != p.eq.len() || cert.ge.len() != p.ge.len() {
        return false;
    }
    if cert.ge.iter().any(|w| w.is_negative()) {
        return false;
    }
    let mut combo = vec![Rat::zero(); p.vars];
    let mut rhs = Rat::zero();
    for (m, row) in cert.eq.iter().zip(&p.eq).chain(cert.ge.iter().zip(&p.ge)) {
        for (cv, rv) in combo.iter_mut().zip(&row.coeffs) {
            *cv += m * rv;
        }
        rhs += m * &row.rhs;
    }
    for (v, cv) in combo.iter().enumerate() {
        let ok = if p.nonneg[v] {
            !cv.is_positive()
        } else {
            cv.is_zero()
        };
        if !ok {
            return false;
        }
    }
    rhs.is_positive()
}

pub fn validate_point(p: &LpProblem, x: &[Rat]) -> bool {
    if x.len() != p.vars {
        return false;
    }
    for (v, flag) in p.nonneg.iter().enumerate() {
        if *flag && x[v].is_negative() {
            return false;
        }
    }
    let dot = |row: &LinRow| -> Rat {
        row.coeffs
            .iter()
            .zip(x)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, v| acc + v)
    };
    p.eq.iter().all(|r| dot(r) == r.rhs) && p.ge.iter().all(|r| dot(r) >= r.rhs)
}
