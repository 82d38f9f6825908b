use super::rat::rat_sum;
use super::Rat;

/// Constraint sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Lower bound of a variable; upper bounds are expressed as constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    /// `x >= 0`
    NonNeg,
    /// unbounded below
    Free,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

/// A maximization problem over rationals.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// maximized
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![VarBound::NonNeg; num_vars],
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. When `status` is `Optimal` the primal and dual are both
/// populated and satisfy strong duality exactly; this is re-checked after
/// every solve.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rat,
    pub primal: Vec<Rat>,
    /// one multiplier per constraint, in the constraint's original
    /// orientation: `>= 0` for `Le` rows, `<= 0` for `Ge` rows, free for `Eq`
    pub dual: Vec<Rat>,
}

impl LpSolution {
    fn status_only(status: LpStatus) -> Self {
        LpSolution {
            status,
            value: Rat::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        }
    }
}

/// Scalar the tableau runs on. The machine-word implementation signals
/// overflow with `None`, which restarts the solve on `Rat`.
trait Num: Clone + PartialOrd + Sized {
    fn zero() -> Self;
    fn from_rat(r: &Rat) -> Option<Self>;
    fn to_rat(&self) -> Rat;
    fn try_add(&self, o: &Self) -> Option<Self>;
    fn try_sub(&self, o: &Self) -> Option<Self>;
    fn try_mul(&self, o: &Self) -> Option<Self>;
    fn try_div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
}

impl Num for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
}

/// `n/d` with `d > 0`, reduced, both bounded by `LIMIT` so products fit i128.
#[derive(Clone, Copy, PartialEq)]
struct SmallRat {
    n: i64,
    d: i64,
}

const LIMIT: i128 = 1 << 62;

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl SmallRat {
    fn make(mut n: i128, mut d: i128) -> Option<SmallRat> {
        if d == 0 {
            return None;
        }
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n != 0 {
            let g = gcd128(n, d);
            n /= g;
            d /= g;
        } else {
            d = 1;
        }
        if n.abs() >= LIMIT || d >= LIMIT {
            return None;
        }
        Some(SmallRat {
            n: n as i64,
            d: d as i64,
        })
    }
}

impl PartialOrd for SmallRat {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        (self.n as i128 * o.d as i128).partial_cmp(&(o.n as i128 * self.d as i128))
    }
}

impl Num for SmallRat {
    fn zero() -> Self {
        SmallRat { n: 0, d: 1 }
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        use num_traits::ToPrimitive;
        let n = r.numer().to_i64()?;
        let d = r.denom().to_i64()?;
        SmallRat::make(n as i128, d as i128)
    }
    fn to_rat(&self) -> Rat {
        Rat::new(self.n, self.d)
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        SmallRat::make(
            self.n as i128 * o.d as i128 + o.n as i128 * self.d as i128,
            self.d as i128 * o.d as i128,
        )
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        SmallRat::make(
            self.n as i128 * o.d as i128 - o.n as i128 * self.d as i128,
            self.d as i128 * o.d as i128,
        )
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        SmallRat::make(self.n as i128 * o.n as i128, self.d as i128 * o.d as i128)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.n == 0 {
            return None;
        }
        SmallRat::make(self.n as i128 * o.d as i128, self.d as i128 * o.n as i128)
    }
    fn neg(&self) -> Self {
        SmallRat {
            n: -self.n,
            d: self.d,
        }
    }
    fn is_zero(&self) -> bool {
        self.n == 0
    }
    fn is_neg(&self) -> bool {
        self.n < 0
    }
    fn is_pos(&self) -> bool {
        self.n > 0
    }
}

/// Exact two-phase primal simplex with Bland's anti-cycling rule (lowest
/// eligible column enters; ratio ties broken by lowest basic variable), so
/// identical inputs always produce identical solutions.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let sol = match solve_generic::<SmallRat>(lp) {
        Some(s) => s,
        None => solve_generic::<Rat>(lp).expect("big-rational solve cannot overflow"),
    };
    if sol.status == LpStatus::Optimal {
        if let Err(e) = verify_certificate(lp, &sol) {
            panic!("simplex produced an invalid certificate: {e}");
        }
    }
    sol
}

struct Tableau<T> {
    rows: Vec<Vec<T>>, // m x (ncols + 1), last entry is rhs
    obj: Vec<T>,       // reduced costs, length ncols + 1 (last = -objective value)
    basis: Vec<usize>,
    ncols: usize,
}

impl<T: Num> Tableau<T> {
    fn pivot(&mut self, prow: usize, pcol: usize) -> Option<()> {
        let piv = self.rows[prow][pcol].clone();
        let inv_row: Vec<T> = {
            let row = &self.rows[prow];
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                out.push(v.try_div(&piv)?);
            }
            out
        };
        self.rows[prow] = inv_row;
        for r in 0..self.rows.len() {
            if r == prow {
                continue;
            }
            let factor = self.rows[r][pcol].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..=self.ncols {
                let delta = self.rows[prow][c].try_mul(&factor)?;
                self.rows[r][c] = self.rows[r][c].try_sub(&delta)?;
            }
        }
        let factor = self.obj[pcol].clone();
        if !factor.is_zero() {
            for c in 0..=self.ncols {
                let delta = self.rows[prow][c].try_mul(&factor)?;
                self.obj[c] = self.obj[c].try_sub(&delta)?;
            }
        }
        self.basis[prow] = pcol;
        Some(())
    }

    /// Runs Bland's rule until optimal; `allowed` filters entering columns.
    /// Returns `Some(false)` on unboundedness, `None` on overflow.
    fn optimize(&mut self, allowed: &[bool]) -> Option<bool> {
        loop {
            let mut enter = None;
            for c in 0..self.ncols {
                if allowed[c] && self.obj[c].is_neg() {
                    enter = Some(c);
                    break;
                }
            }
            let Some(pcol) = enter else {
                return Some(true);
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][pcol].is_pos() {
                    let ratio = self.rows[r][self.ncols].try_div(&self.rows[r][pcol])?;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((prow, _)) = leave else {
                return Some(false);
            };
            self.pivot(prow, pcol)?;
        }
    }
}

/// Column layout metadata shared by the solve and the dual extraction.
struct Layout {
    /// structural column(s) per original var: (positive part, negative part)
    var_cols: Vec<(usize, Option<usize>)>,
    /// per original row: sign flip applied during rhs normalization
    row_sign: Vec<bool>,
    /// per original row: the column that started as that row's unit vector
    unit_col: Vec<usize>,
    artificial_start: usize,
    ncols: usize,
}

fn build<T: Num>(lp: &LinearProgram) -> Option<(Tableau<T>, Layout, Vec<T>)> {
    let m = lp.constraints.len();
    let mut var_cols = Vec::with_capacity(lp.num_vars);
    let mut next = 0usize;
    for b in &lp.bounds {
        match b {
            VarBound::NonNeg => {
                var_cols.push((next, None));
                next += 1;
            }
            VarBound::Free => {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
    }
    let nstruct = next;

    // row senses after making every rhs nonnegative
    let mut row_sign = vec![false; m];
    let mut senses = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        let mut rel = con.rel;
        if con.rhs.is_negative() {
            row_sign[i] = true;
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        senses.push(rel);
    }
    let n_slack = senses
        .iter()
        .filter(|r| matches!(r, Relation::Le | Relation::Ge))
        .count();
    let n_art = senses
        .iter()
        .filter(|r| matches!(r, Relation::Ge | Relation::Eq))
        .count();
    let ncols = nstruct + n_slack + n_art;
    let artificial_start = nstruct + n_slack;

    let zero = || T::zero();
    let mut rows: Vec<Vec<T>> = vec![vec![zero(); ncols + 1]; m];
    let mut unit_col = vec![0usize; m];
    let mut slack_at = nstruct;
    let mut art_at = artificial_start;
    for (i, con) in lp.constraints.iter().enumerate() {
        for (j, coeff) in con.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let v = T::from_rat(coeff)?;
            let v = if row_sign[i] { v.neg() } else { v };
            let (pc, nc) = var_cols[j];
            rows[i][pc] = v.clone();
            if let Some(nc) = nc {
                rows[i][nc] = v.neg();
            }
        }
        let rhs = T::from_rat(&con.rhs)?;
        rows[i][ncols] = if row_sign[i] { rhs.neg() } else { rhs };
        match senses[i] {
            Relation::Le => {
                rows[i][slack_at] = T::from_rat(&Rat::one())?;
                unit_col[i] = slack_at;
                slack_at += 1;
            }
            Relation::Ge => {
                rows[i][slack_at] = T::from_rat(&Rat::one())?.neg();
                slack_at += 1;
                rows[i][art_at] = T::from_rat(&Rat::one())?;
                unit_col[i] = art_at;
                art_at += 1;
            }
            Relation::Eq => {
                rows[i][art_at] = T::from_rat(&Rat::one())?;
                unit_col[i] = art_at;
                art_at += 1;
            }
        }
    }

    // phase-2 costs over all columns
    let mut costs = vec![zero(); ncols];
    for (j, c) in lp.objective.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = T::from_rat(c)?;
        let (pc, nc) = var_cols[j];
        costs[pc] = v.clone();
        if let Some(nc) = nc {
            costs[nc] = v.neg();
        }
    }

    let layout = Layout {
        var_cols,
        row_sign,
        unit_col,
        artificial_start,
        ncols,
    };
    let tableau = Tableau {
        rows,
        obj: vec![zero(); ncols + 1],
        basis: vec![0; m],
        ncols,
    };
    Some((tableau, layout, costs))
}

fn solve_generic<T: Num>(lp: &LinearProgram) -> Option<LpSolution> {
    let m = lp.constraints.len();
    let (mut t, layout, costs) = build::<T>(lp)?;

    // initial basis: the unit-start column of each row
    for i in 0..m {
        t.basis[i] = layout.unit_col[i];
    }

    // Phase 1: maximize -sum(artificials); obj row = sum of artificial rows
    // negated appropriately. Reduced cost row for cost vector c is
    // c_B B^-1 A - c; with the identity start, that is computed by pricing
    // out basic columns.
    let has_art = layout.artificial_start < layout.ncols;
    if has_art {
        // cost: -1 on artificials
        for c in layout.artificial_start..layout.ncols {
            t.obj[c] = T::from_rat(&Rat::one())?;
        }
        // price out artificial basic rows
        for i in 0..m {
            if t.basis[i] >= layout.artificial_start {
                for c in 0..=t.ncols {
                    let delta = t.rows[i][c].clone();
                    t.obj[c] = t.obj[c].try_sub(&delta)?;
                }
            }
        }
        let allowed: Vec<bool> = (0..t.ncols).map(|c| c < layout.artificial_start).collect();
        if !(t.optimize(&allowed)?) {
            // phase-1 objective is bounded by 0; cannot be unbounded
            return None;
        }
        // obj[ncols] now holds max(-sum of artificials); negative means infeasible
        if t.obj[t.ncols].is_neg() {
            return Some(LpSolution::status_only(LpStatus::Infeasible));
        }
        // drive remaining artificials out of the basis where possible
        for i in 0..m {
            if t.basis[i] >= layout.artificial_start {
                let pick = (0..layout.artificial_start).find(|&c| !t.rows[i][c].is_zero());
                if let Some(c) = pick {
                    t.pivot(i, c)?;
                }
                // an all-zero row is redundant; its artificial stays basic at 0
            }
        }
    }

    // Phase 2: rebuild reduced costs for the real objective.
    for c in 0..t.ncols {
        t.obj[c] = costs[c].neg();
    }
    t.obj[t.ncols] = T::zero();
    for i in 0..m {
        let b = t.basis[i];
        let cb = costs[b].clone();
        if cb.is_zero() {
            continue;
        }
        for c in 0..=t.ncols {
            let delta = t.rows[i][c].try_mul(&cb)?;
            t.obj[c] = t.obj[c].try_add(&delta)?;
        }
    }
    let allowed: Vec<bool> = (0..t.ncols).map(|c| c < layout.artificial_start).collect();
    if !(t.optimize(&allowed)?) {
        return Some(LpSolution::status_only(LpStatus::Unbounded));
    }

    // primal
    let mut col_val = vec![Rat::zero(); t.ncols];
    for i in 0..m {
        col_val[t.basis[i]] = t.rows[i][t.ncols].to_rat();
    }
    let mut primal = Vec::with_capacity(lp.num_vars);
    for (pc, nc) in &layout.var_cols {
        let mut v = col_val[*pc].clone();
        if let Some(nc) = nc {
            v -= &col_val[*nc];
        }
        primal.push(v);
    }
    let value = rat_sum(
        lp.objective
            .iter()
            .zip(primal.iter())
            .map(|(c, x)| c * x)
            .collect::<Vec<_>>()
            .iter(),
    );

    // dual: reduced cost of each row's unit-start column, unflipped
    let mut dual = Vec::with_capacity(m);
    for i in 0..m {
        let mut y = t.obj[layout.unit_col[i]].to_rat();
        if layout.row_sign[i] {
            y = -y;
        }
        dual.push(y);
    }

    Some(LpSolution {
        status: LpStatus::Optimal,
        value,
        primal,
        dual,
    })
}

/// A violated certificate condition, with enough context to debug.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("solution is not optimal")]
    NotOptimal,
    #[error("primal/dual length mismatch")]
    Shape,
    #[error("primal infeasible at constraint {0}")]
    PrimalConstraint(usize),
    #[error("primal bound violated at variable {0}")]
    PrimalBound(usize),
    #[error("dual multiplier {0} has the wrong sign")]
    DualSign(usize),
    #[error("dual infeasible at variable {0}")]
    DualConstraint(usize),
    #[error("complementary slackness violated at constraint {0}")]
    SlacknessRow(usize),
    #[error("complementary slackness violated at variable {0}")]
    SlacknessCol(usize),
    #[error("primal objective {primal} != dual objective {dual}")]
    Objective { primal: Rat, dual: Rat },
}

/// Re-derives optimality of `sol` from first principles in exact arithmetic:
/// primal feasibility, dual feasibility, complementary slackness, and
/// equality of the two objectives.
pub fn verify_certificate(lp: &LinearProgram, sol: &LpSolution) -> Result<(), CertificateError> {
    if sol.status != LpStatus::Optimal {
        return Err(CertificateError::NotOptimal);
    }
    if sol.primal.len() != lp.num_vars || sol.dual.len() != lp.constraints.len() {
        return Err(CertificateError::Shape);
    }
    for (j, b) in lp.bounds.iter().enumerate() {
        if matches!(b, VarBound::NonNeg) && sol.primal[j].is_negative() {
            return Err(CertificateError::PrimalBound(j));
        }
    }
    let mut slacks = Vec::with_capacity(lp.constraints.len());
    for (i, con) in lp.constraints.iter().enumerate() {
        let lhs = rat_sum(
            con.coeffs
                .iter()
                .zip(sol.primal.iter())
                .map(|(a, x)| a * x)
                .collect::<Vec<_>>()
                .iter(),
        );
        let slack = &con.rhs - &lhs;
        let ok = match con.rel {
            Relation::Le => !slack.is_negative(),
            Relation::Ge => !slack.is_positive(),
            Relation::Eq => slack.is_zero(),
        };
        if !ok {
            return Err(CertificateError::PrimalConstraint(i));
        }
        let y = &sol.dual[i];
        let sign_ok = match con.rel {
            Relation::Le => !y.is_negative(),
            Relation::Ge => !y.is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return Err(CertificateError::DualSign(i));
        }
        slacks.push(slack);
    }
    for j in 0..lp.num_vars {
        let mut s = -&lp.objective[j];
        for (con, y) in lp.constraints.iter().zip(sol.dual.iter()) {
            s += &con.coeffs[j] * y;
        }
        let ok = match lp.bounds[j] {
            VarBound::NonNeg => !s.is_negative(),
            VarBound::Free => s.is_zero(),
        };
        if !ok {
            return Err(CertificateError::DualConstraint(j));
        }
        if !s.is_zero() && !sol.primal[j].is_zero() {
            return Err(CertificateError::SlacknessCol(j));
        }
    }
    for (i, slack) in slacks.iter().enumerate() {
        if !slack.is_zero() && !sol.dual[i].is_zero() {
            return Err(CertificateError::SlacknessRow(i));
        }
    }
    let dual_obj = rat_sum(
        lp.constraints
            .iter()
            .zip(sol.dual.iter())
            .map(|(c, y)| &c.rhs * y)
            .collect::<Vec<_>>()
            .iter(),
    );
    let primal_obj = rat_sum(
        lp.objective
            .iter()
            .zip(sol.primal.iter())
            .map(|(c, x)| c * x)
            .collect::<Vec<_>>()
            .iter(),
    );
    if primal_obj != dual_obj || primal_obj != sol.value {
        return Err(CertificateError::Objective {
            primal: primal_obj,
            dual: dual_obj,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn max_t_under_two_bounds_with_free_t() {
        // max t s.t. t <= 3/2, t <= 2, t free
        let mut lp = LinearProgram::new(1);
        lp.objective[0] = Rat::one();
        lp.bounds[0] = VarBound::Free;
        lp.push(vec![Rat::one()], Relation::Le, r(3, 2));
        lp.push(vec![Rat::one()], Relation::Le, Rat::from_int(2));
        let sol = solve_lp(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, r(3, 2));
    }

    #[test]
    fn infeasible_band() {
        // max x s.t. x >= 1, x <= 0
        let mut lp = LinearProgram::new(1);
        lp.objective[0] = Rat::one();
        lp.push(vec![Rat::one()], Relation::Ge, Rat::one());
        lp.push(vec![Rat::one()], Relation::Le, Rat::zero());
        assert_eq!(solve_lp(&lp).status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2);
        lp.objective[0] = Rat::one();
        lp.push(vec![Rat::zero(), Rat::one()], Relation::Le, Rat::one());
        assert_eq!(solve_lp(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn textbook_optimum_with_duals() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![Rat::from_int(3), Rat::from_int(5)];
        lp.push(vec![Rat::one(), Rat::zero()], Relation::Le, Rat::from_int(4));
        lp.push(
            vec![Rat::zero(), Rat::from_int(2)],
            Relation::Le,
            Rat::from_int(12),
        );
        lp.push(
            vec![Rat::from_int(3), Rat::from_int(2)],
            Relation::Le,
            Rat::from_int(18),
        );
        let sol = solve_lp(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, Rat::from_int(36));
        assert_eq!(sol.primal, vec![Rat::from_int(2), Rat::from_int(6)]);
        assert!(verify_certificate(&lp, &sol).is_ok());
    }

    #[test]
    fn equality_rows_and_negative_rhs() {
        // max x + y s.t. x - y = -1, x + y <= 5
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![Rat::one(), Rat::one()];
        lp.push(
            vec![Rat::one(), -Rat::one()],
            Relation::Eq,
            -Rat::one(),
        );
        lp.push(vec![Rat::one(), Rat::one()], Relation::Le, Rat::from_int(5));
        let sol = solve_lp(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, Rat::from_int(5));
        assert_eq!(sol.primal, vec![Rat::from_int(2), Rat::from_int(3)]);
    }

    #[test]
    fn perturbed_certificates_are_rejected() {
        let mut lp = LinearProgram::new(1);
        lp.objective[0] = Rat::one();
        lp.push(vec![Rat::one()], Relation::Le, Rat::one());
        let sol = solve_lp(&lp);
        assert!(verify_certificate(&lp, &sol).is_ok());

        let mut bad = sol.clone();
        bad.dual[0] += Rat::one();
        assert!(matches!(
            verify_certificate(&lp, &bad),
            Err(CertificateError::Objective { .. }) | Err(CertificateError::DualConstraint(_))
        ));

        let mut bad = sol;
        bad.primal[0] += Rat::one();
        assert!(matches!(
            verify_certificate(&lp, &bad),
            Err(CertificateError::PrimalConstraint(0))
        ));
    }

    /// Brute-force oracle: enumerate all vertices (bases) of the feasible
    /// region and take the best feasible one.
    fn brute_force_opt(lp: &LinearProgram) -> Option<Rat> {
        // planes: constraints as equalities plus x_j = 0 for nonneg vars
        let n = lp.num_vars;
        let mut planes: Vec<(Vec<Rat>, Rat)> = lp
            .constraints
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect();
        for j in 0..n {
            if matches!(lp.bounds[j], VarBound::NonNeg) {
                let mut row = vec![Rat::zero(); n];
                row[j] = Rat::one();
                planes.push((row, Rat::zero()));
            }
        }
        let idx: Vec<usize> = (0..planes.len()).collect();
        let mut best: Option<Rat> = None;
        for combo in combinations(&idx, n) {
            if let Some(x) = solve_square(&planes, &combo, n) {
                if feasible(lp, &x) {
                    let v = rat_sum(
                        lp.objective
                            .iter()
                            .zip(x.iter())
                            .map(|(c, x)| c * x)
                            .collect::<Vec<_>>()
                            .iter(),
                    );
                    best = Some(match best {
                        None => v,
                        Some(b) => b.max(v),
                    });
                }
            }
        }
        best
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..items.len() {
                cur.push(items[i]);
                rec(items, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(items, k, 0, &mut cur, &mut out);
        out
    }

    fn solve_square(planes: &[(Vec<Rat>, Rat)], combo: &[usize], n: usize) -> Option<Vec<Rat>> {
        let mut a: Vec<Vec<Rat>> = combo.iter().map(|&i| planes[i].0.clone()).collect();
        let mut b: Vec<Rat> = combo.iter().map(|&i| planes[i].1.clone()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] = &a[col][c] / &p;
            }
            b[col] = &b[col] / &p;
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let d = &a[col][c] * &f;
                        a[r][c] = &a[r][c] - &d;
                    }
                    let d = &b[col] * &f;
                    b[r] = &b[r] - &d;
                }
            }
        }
        Some(b)
    }

    fn feasible(lp: &LinearProgram, x: &[Rat]) -> bool {
        for (j, b) in lp.bounds.iter().enumerate() {
            if matches!(b, VarBound::NonNeg) && x[j].is_negative() {
                return false;
            }
        }
        lp.constraints.iter().all(|c| {
            let lhs = rat_sum(
                c.coeffs
                    .iter()
                    .zip(x.iter())
                    .map(|(a, x)| a * x)
                    .collect::<Vec<_>>()
                    .iter(),
            );
            match c.rel {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=6);
            let mut lp = LinearProgram::new(n);
            for j in 0..n {
                lp.objective[j] = Rat::from_int(rng.gen_range(-3..=3));
            }
            for _ in 0..m {
                let coeffs: Vec<Rat> = (0..n)
                    .map(|_| Rat::from_int(rng.gen_range(-3..=3)))
                    .collect();
                let rel = match rng.gen_range(0..3) {
                    0 => Relation::Le,
                    1 => Relation::Ge,
                    _ => Relation::Eq,
                };
                lp.push(coeffs, rel, Rat::from_int(rng.gen_range(-4..=6)));
            }
            // keep the region bounded so the oracle applies
            for j in 0..n {
                let mut row = vec![Rat::zero(); n];
                row[j] = Rat::one();
                lp.push(row, Relation::Le, Rat::from_int(10));
            }
            let sol = solve_lp(&lp);
            let oracle = brute_force_opt(&lp);
            match sol.status {
                LpStatus::Optimal => {
                    assert_eq!(Some(sol.value.clone()), oracle);
                    assert!(verify_certificate(&lp, &sol).is_ok());
                }
                LpStatus::Infeasible => assert_eq!(oracle, None),
                LpStatus::Unbounded => unreachable!("region is boxed"),
            }
        }
    }

    #[test]
    fn determinism() {
        let mut lp = LinearProgram::new(3);
        lp.objective = vec![Rat::one(), Rat::one(), Rat::one()];
        lp.push(
            vec![Rat::one(), Rat::one(), Rat::zero()],
            Relation::Le,
            Rat::one(),
        );
        lp.push(
            vec![Rat::zero(), Rat::one(), Rat::one()],
            Relation::Le,
            Rat::one(),
        );
        let a = solve_lp(&lp);
        let b = solve_lp(&lp);
        assert_eq!(a.primal, b.primal);
        assert_eq!(a.dual, b.dual);
        assert_eq!(a.value, b.value);
    }
}
