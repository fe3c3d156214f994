use std::collections::HashSet;
use std::fmt::Write;

use super::Mode;

/// A CNF formula over variables `1..=num_vars`, literals as signed integers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comments: Vec<String>,
    seen: HashSet<Vec<i64>>,
}

impl CnfFormula {
    /// Adds a clause after removing duplicate literals; tautologies and
    /// repeated clauses are dropped.
    pub fn add_clause(&mut self, lits: &[i64]) {
        let mut c: Vec<i64> = lits.to_vec();
        c.sort_unstable_by_key(|l| (l.abs(), *l));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            return;
        }
        if self.seen.insert(c.clone()) {
            self.clauses.push(c);
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Lit {
    Const(bool),
    Var(i64),
}

impl Lit {
    fn neg(self) -> Lit {
        match self {
            Lit::Const(b) => Lit::Const(!b),
            Lit::Var(v) => Lit::Var(-v),
        }
    }
}

fn push(f: &mut CnfFormula, lits: &[Lit]) {
    let mut clause = Vec::with_capacity(lits.len());
    for l in lits {
        match *l {
            Lit::Const(true) => return,
            Lit::Const(false) => {}
            Lit::Var(v) => clause.push(v),
        }
    }
    f.add_clause(&clause);
}

/// Order-encoded running sums along one progression: `r(j, t)` holds iff
/// `f(d) + … + f(jd) ≥ t`. Only `t ∈ [−C+1, C]` get variables; smaller
/// thresholds are true and larger ones false, which is the bound itself.
struct Counter {
    base: i64,
    bound: i64,
}

impl Counter {
    fn lit(&self, j: usize, t: i64) -> Lit {
        if j == 0 {
            return Lit::Const(t <= 0);
        }
        if t <= -self.bound {
            return Lit::Const(true);
        }
        if t > self.bound {
            return Lit::Const(false);
        }
        let width = 2 * self.bound;
        Lit::Var(self.base + (j as i64 - 1) * width + (t + self.bound - 1))
    }
}

/// Formula satisfiable iff some `f: {1..N} → {±1}` (completely
/// multiplicative in `cm` mode) has every HAP sum in `[−C, C]`.
/// Variable `n ≤ N` is true iff `f(n) = +1`.
pub fn build_cnf(big_n: usize, bound: u32, mode: Mode) -> CnfFormula {
    let c = bound as i64;
    let mut f = CnfFormula {
        num_vars: big_n,
        ..Default::default()
    };
    f.comments.push(format!(
        "HAP discrepancy <= {bound}, N = {big_n}, mode = {mode}"
    ));
    f.comments
        .push(format!("vars 1..{big_n}: var n true iff f(n) = +1"));
    for d in 1..=big_n {
        let len = big_n / d;
        let width = 2 * c as usize;
        let counter = Counter {
            base: f.num_vars as i64 + 1,
            bound: c,
        };
        if width > 0 {
            f.comments.push(format!(
                "d={d}: vars {}..{} are r(j,t) <=> f(d)+...+f(jd) >= t, at {} + (j-1)*{width} + (t+{bound}-1), 1<=j<={len}, {}<=t<={bound}",
                counter.base,
                counter.base + (len * width) as i64 - 1,
                counter.base,
                1 - c
            ));
        }
        f.num_vars += len * width;
        for j in 1..=len {
            let x = Lit::Var((j * d) as i64);
            for t in -c - 2..=c + 2 {
                let prev = counter.lit(j - 1, t);
                push(&mut f, &[prev.neg(), x.neg(), counter.lit(j, t + 1)]);
                push(&mut f, &[prev.neg(), counter.lit(j, t - 1)]);
                let cur = counter.lit(j, t + 1);
                push(&mut f, &[cur.neg(), counter.lit(j - 1, t)]);
                push(&mut f, &[cur.neg(), x, counter.lit(j - 1, t + 2)]);
                push(&mut f, &[cur.neg(), counter.lit(j, t)]);
            }
        }
    }
    if mode == Mode::CompletelyMultiplicative && big_n >= 1 {
        f.comments
            .push("multiplicativity: f(1) = +1 and f(mn) = f(m) f(n)".into());
        f.add_clause(&[1]);
        for m in 2..=big_n {
            for n in m..=big_n / m {
                let (a, b, p) = (m as i64, n as i64, (m * n) as i64);
                f.add_clause(&[-a, -b, p]);
                f.add_clause(&[a, b, p]);
                f.add_clause(&[-a, b, -p]);
                f.add_clause(&[a, -b, -p]);
            }
        }
    }
    f
}

/// DIMACS text of [`build_cnf`].
pub fn emit_cnf(big_n: usize, bound: u32, mode: Mode) -> String {
    build_cnf(big_n, bound, mode).to_dimacs()
}
