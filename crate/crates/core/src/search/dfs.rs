use std::time::Instant;

use super::{Certificate, Mode, SearchConfig};
use crate::error::Result;

/// Why a search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Every branch was refuted: `n_max` is exact.
    Exhausted,
    /// A valid sequence of length `max_n` was found.
    ReachedCeiling,
    NodeLimit,
    TimeLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub n_max: usize,
    pub witness: Certificate,
    pub complete: bool,
    pub outcome: Outcome,
    pub nodes: u64,
}

/// Lazily extended table of divisors and smallest prime factors.
#[derive(Debug, Default)]
struct Arith {
    divisors: Vec<Vec<u32>>,
    spf: Vec<u32>,
}

impl Arith {
    fn extend_to(&mut self, n: usize) {
        while self.divisors.len() < n {
            let m = self.divisors.len() + 1;
            let mut small = Vec::new();
            let mut large = Vec::new();
            let mut spf = m as u32;
            let mut i = 1;
            while i * i <= m {
                if m.is_multiple_of(i) {
                    small.push(i as u32);
                    if i > 1 && spf == m as u32 {
                        spf = i as u32;
                    }
                    if i * i != m {
                        large.push((m / i) as u32);
                    }
                }
                i += 1;
            }
            small.extend(large.into_iter().rev());
            self.divisors.push(small);
            self.spf.push(spf);
        }
    }

    fn divisors(&mut self, n: usize) -> &[u32] {
        self.extend_to(n);
        &self.divisors[n - 1]
    }

    /// Smallest prime factor of `n ≥ 2`.
    fn spf(&mut self, n: usize) -> usize {
        self.extend_to(n);
        self.spf[n - 1] as usize
    }
}

/// Assigned prefix `f(1..=n)` with one running sum per difference `d ≤ n`.
#[derive(Debug)]
pub(crate) struct GeneralState {
    bound: i32,
    values: Vec<i8>,
    sums: Vec<i32>,
    arith: Arith,
}

impl GeneralState {
    pub(crate) fn new(bound: u32) -> Self {
        GeneralState {
            bound: bound as i32,
            values: Vec::new(),
            sums: Vec::new(),
            arith: Arith::default(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    /// Appends `v` if every affected running sum stays within the bound.
    pub(crate) fn push(&mut self, v: i8) -> bool {
        let n = self.values.len() + 1;
        self.sums.push(0);
        let v32 = v as i32;
        let ok = self
            .arith
            .divisors(n)
            .iter()
            .all(|&d| (self.sums[d as usize - 1] + v32).abs() <= self.bound);
        if !ok {
            self.sums.pop();
            return false;
        }
        for &d in self.arith.divisors(n) {
            self.sums[d as usize - 1] += v32;
        }
        self.values.push(v);
        true
    }

    pub(crate) fn pop(&mut self) -> Option<i8> {
        let v = self.values.pop()?;
        let n = self.values.len() + 1;
        for &d in self.arith.divisors(n) {
            self.sums[d as usize - 1] -= v as i32;
        }
        self.sums.pop();
        Some(v)
    }

    #[cfg(test)]
    pub(crate) fn sums(&self) -> &[i32] {
        &self.sums
    }

    #[cfg(test)]
    pub(crate) fn recompute_sums(&self) -> Vec<i32> {
        let n = self.values.len();
        (1..=n)
            .map(|d| (d..=n).step_by(d).map(|i| self.values[i - 1] as i32).sum())
            .collect()
    }
}

/// Assigned prefix of a completely multiplicative sequence with its running
/// sum; the sum along `d` is `f(d)` times a prefix sum, so bounding the
/// prefix sums bounds every progression.
#[derive(Debug)]
struct CmState {
    bound: i32,
    values: Vec<i8>,
    prefix: Vec<i32>,
    arith: Arith,
}

impl CmState {
    fn new(bound: u32) -> Self {
        CmState {
            bound: bound as i32,
            values: Vec::new(),
            prefix: vec![0],
            arith: Arith::default(),
        }
    }

    /// The value forced at the next position, or `None` at a prime.
    fn forced(&mut self) -> Option<i8> {
        let n = self.values.len() + 1;
        if n == 1 {
            return Some(1);
        }
        let p = self.arith.spf(n);
        (p != n).then(|| self.values[p - 1] * self.values[n / p - 1])
    }

    fn push(&mut self, v: i8) -> bool {
        let s = self.prefix[self.values.len()] + v as i32;
        if s.abs() > self.bound {
            return false;
        }
        self.values.push(v);
        self.prefix.push(s);
        true
    }

    fn pop(&mut self) -> Option<i8> {
        self.prefix.pop();
        self.values.pop()
    }
}

struct Budget {
    start: Instant,
    nodes: u64,
    node_limit: u64,
    time_limit: std::time::Duration,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Self {
        Budget {
            start: Instant::now(),
            nodes: 0,
            node_limit: cfg.node_limit,
            time_limit: cfg.time_limit,
        }
    }

    fn tick(&mut self) -> Option<Outcome> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Some(Outcome::NodeLimit);
        }
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.time_limit {
            return Some(Outcome::TimeLimit);
        }
        None
    }
}

fn finish(cfg: &SearchConfig, best: Vec<i8>, outcome: Outcome, nodes: u64) -> SearchResult {
    SearchResult {
        n_max: best.len(),
        witness: Certificate::new(best, cfg.bound, cfg.mode),
        complete: outcome == Outcome::Exhausted,
        outcome,
        nodes,
    }
}

/// Longest ±1 sequence with every HAP sum in `[−C, C]`, assigning
/// `f(1), f(2), …` in order and trying `+1` before `−1`. The branch
/// `f(1) = −1` mirrors `f(1) = +1` and is skipped.
pub fn dfs_longest(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if cfg.mode == Mode::CompletelyMultiplicative {
        return dfs_longest_cm(cfg);
    }
    let mut state = GeneralState::new(cfg.bound);
    let mut budget = Budget::new(cfg);
    let mut best: Vec<i8> = Vec::new();
    let mut candidate: i8 = 1;
    let outcome = 'search: loop {
        if state.len() == cfg.max_n {
            break Outcome::ReachedCeiling;
        }
        if let Some(o) = budget.tick() {
            break o;
        }
        if state.push(candidate) {
            if state.len() > best.len() {
                best = state.values.clone();
            }
            candidate = 1;
            continue;
        }
        if candidate == 1 && state.len() > 0 {
            candidate = -1;
            continue;
        }
        loop {
            match state.pop() {
                Some(1) if state.len() > 0 => {
                    candidate = -1;
                    continue 'search;
                }
                Some(_) if state.len() > 0 => continue,
                _ => break 'search Outcome::Exhausted,
            }
        }
    };
    Ok(finish(cfg, best, outcome, budget.nodes))
}

/// As [`dfs_longest`] over completely multiplicative sequences: only the
/// values at primes are chosen, all others are forced.
pub fn dfs_longest_cm(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let mut state = CmState::new(cfg.bound);
    let mut budget = Budget::new(cfg);
    let mut best: Vec<i8> = Vec::new();
    // Positions where a free choice was made, so backtracking knows where
    // alternatives remain.
    let mut is_choice: Vec<bool> = Vec::new();
    let mut candidate: i8 = 1;
    let outcome = 'search: loop {
        if state.values.len() == cfg.max_n {
            break Outcome::ReachedCeiling;
        }
        if let Some(o) = budget.tick() {
            break o;
        }
        let forced = state.forced();
        let v = forced.unwrap_or(candidate);
        if state.push(v) {
            is_choice.push(forced.is_none());
            if state.values.len() > best.len() {
                best = state.values.clone();
            }
            candidate = 1;
            continue;
        }
        if forced.is_none() && candidate == 1 {
            candidate = -1;
            continue;
        }
        loop {
            let Some(v) = state.pop() else {
                break 'search Outcome::Exhausted;
            };
            if is_choice.pop() == Some(true) && v == 1 {
                candidate = -1;
                continue 'search;
            }
        }
    };
    Ok(finish(cfg, best, outcome, budget.nodes))
}

/// Dispatches on the configured mode.
pub fn search(cfg: &SearchConfig) -> Result<SearchResult> {
    match cfg.mode {
        Mode::General => dfs_longest(cfg),
        Mode::CompletelyMultiplicative => dfs_longest_cm(cfg),
    }
}
