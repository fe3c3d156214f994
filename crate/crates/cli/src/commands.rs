use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use hapdisc::discrepancy::{
    adversarial_bcc, hap_discrepancy, hap_discrepancy_cm, hap_discrepancy_table, mc_second_moment,
    quadratic_form_check, vector_bcc_norm, SeqWindow,
};
use hapdisc::mulfun::{
    chi2_family, factorial_alternating_signs, lifted_legendre, random_bcc, BccModel,
};
use hapdisc::numtheory::{count_digit, legendre_character, valuation, PrimeTable};
use hapdisc::pretentious::{
    harmonic_range, log_avg_correlation, pretentious_dist_sq, prime_tail_factor, singular_series,
    triangle_check, window_variance,
};
use hapdisc::reduction::{
    build_f, discrepancy_identity_check, fourier_transform, FreqDistribution, GroupArray,
};
use hapdisc::search::{
    emit_cnf, search, verify_certificate, Certificate, Mode, Outcome, SearchConfig,
};
use hapdisc::Complex64;

use crate::output::{num, Table};
use crate::seqfile::{Kind, SeqFile};
use crate::specs;
use crate::{Cli, CliError, Command, Construction, GrowthConstruction, Output};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Seed of the stream called `name`, derived from the master seed.
fn substream(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = seed ^ h;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn table_for(limit: u64) -> Result<Arc<PrimeTable>, CliError> {
    if limit > 200_000_000 {
        return Err(input(format!("{limit} is beyond the supported prime table size")));
    }
    Ok(Arc::new(PrimeTable::new(limit.max(100))))
}

fn read_seqfile(path: &Path) -> Result<SeqFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    SeqFile::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn window(file: &SeqFile) -> Result<SeqWindow, CliError> {
    Ok(SeqWindow::new(file.values.clone())?)
}

fn signs_of(w: &SeqWindow) -> Result<Vec<i8>, CliError> {
    w.as_signs().ok_or_else(|| input("construction is not ±1-valued"))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    let fmt = cli.format;
    match &cli.command {
        Command::Gen {
            construction,
            n,
            q,
            index,
            k,
            overrides,
        } => gen(*construction, *n, *q, *index, *k, overrides, seed, fmt),
        Command::Disc { file, per_d } => {
            let f = read_seqfile(file)?;
            let w = window(&f)?;
            let r = if *per_d {
                hap_discrepancy_table(&w)
            } else {
                hap_discrepancy(&w)
            };
            let summary = vec![
                w.len().to_string(),
                num(r.sup),
                r.witness_n.to_string(),
                r.witness_d.to_string(),
            ];
            let mut t;
            if let Some(per) = &r.per_d {
                t = Table::new(seed, &["d", "sup_d"]);
                t.comment(format!(
                    "N={} sup={} witness_n={} witness_d={}",
                    summary[0], summary[1], summary[2], summary[3]
                ));
                for (d, s) in per.iter().enumerate() {
                    t.row(vec![(d + 1).to_string(), num(*s)]);
                }
            } else {
                t = Table::new(seed, &["N", "sup", "witness_n", "witness_d"]);
                t.row(summary);
            }
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Growth {
            construction,
            ns,
            base,
            k_max,
            log_base,
            q,
            index,
        } => {
            let mut lengths = ns.clone();
            if let Some(b) = base {
                let k = k_max.ok_or_else(|| input("--base needs --k-max"))?;
                for i in 1..=k {
                    lengths.push(
                        b.checked_pow(i)
                            .ok_or_else(|| input("lengths overflow"))?,
                    );
                }
            }
            if lengths.is_empty() {
                return Err(input("give --Ns or --base with --k-max"));
            }
            if *log_base <= 1.0 {
                return Err(input("--log-base must exceed 1"));
            }
            growth(*construction, &lengths, *log_base, *q, *index, seed, fmt)
        }
        Command::Search {
            bound,
            mode,
            max_n,
            node_limit,
            time_limit,
            cert,
        } => {
            let cfg = SearchConfig::new(*bound, (*mode).into())
                .with_max_n(*max_n)
                .with_node_limit(*node_limit)
                .with_time_limit(Duration::from_secs(*time_limit));
            let r = search(&cfg)?;
            if let Some(path) = cert {
                let text = SeqFile::from_signs(&r.witness.values, None).render();
                std::fs::write(path, text)
                    .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut t = Table::new(seed, &["mode", "C", "n_max", "complete", "outcome", "nodes"]);
            t.row(vec![
                cfg.mode.to_string(),
                bound.to_string(),
                r.n_max.to_string(),
                r.complete.to_string(),
                format!("{:?}", r.outcome),
                r.nodes.to_string(),
            ]);
            let code = match r.outcome {
                Outcome::NodeLimit | Outcome::TimeLimit => 3,
                _ => 0,
            };
            Ok(Output {
                text: t.render(fmt),
                code,
            })
        }
        Command::Cnf { n, bound, mode } => {
            if *n == 0 {
                return Err(input("N must be at least 1"));
            }
            Ok(Output::ok(emit_cnf(*n, *bound, (*mode).into())))
        }
        Command::Verify { file, bound, mode } => {
            let f = read_seqfile(file)?;
            let signs = f
                .signs()
                .ok_or_else(|| input("certificate entries must be +1 or -1"))?;
            let mode: Mode = (*mode).into();
            let cert = Certificate::new(signs, *bound, mode);
            let (ok, r) = match verify_certificate(&cert) {
                Ok(x) => x,
                Err(hapdisc::Error::NotMultiplicative { m, n }) => {
                    return Err(CliError::Violation(format!(
                        "not completely multiplicative: f({}) != f({m}) f({n})",
                        m * n
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            let mut t = Table::new(seed, &["N", "C", "mode", "ok", "sup", "witness_n", "witness_d"]);
            t.row(vec![
                cert.len().to_string(),
                bound.to_string(),
                mode.to_string(),
                ok.to_string(),
                num(r.sup),
                r.witness_n.to_string(),
                r.witness_d.to_string(),
            ]);
            Ok(Output {
                text: t.render(fmt),
                code: if ok { 0 } else { 1 },
            })
        }
        Command::Pretend { f, g, h, x } => {
            if !x.is_finite() || *x < 1.0 {
                return Err(input("X must be at least 1"));
            }
            let table = table_for(*x as u64 + 1)?;
            let fa = specs::prime_function(f, table.clone())?;
            let ga = specs::prime_function(g, table.clone())?;
            let d2 = pretentious_dist_sq(fa.as_ref(), ga.as_ref(), &table, *x)?;
            let mut cols = vec!["X", "dist_sq", "dist"];
            let mut row = vec![num(*x), num(d2), num(d2.sqrt())];
            if let Some(h) = h {
                let ha = specs::prime_function(h, table.clone())?;
                cols.push("triangle_residual");
                row.push(num(triangle_check(fa.as_ref(), ga.as_ref(), ha.as_ref(), &table, *x)?));
            }
            let mut t = Table::new(seed, &cols);
            t.row(row);
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Series { h, x, truncation } => {
            let p = truncation.unwrap_or(*x);
            if !p.is_finite() || p < 2.0 {
                return Err(input("truncation must be at least 2"));
            }
            let table = table_for(p as u64 + 1)?;
            let ha = specs::prime_function(h, table.clone())?;
            let s = singular_series(ha.as_ref(), &table, *x, p)?;
            let tail = prime_tail_factor(*x, p);
            let completed = s * tail;
            let mut t = Table::new(
                seed,
                &[
                    "X",
                    "P",
                    "s",
                    "truncated_re",
                    "truncated_im",
                    "tail_factor",
                    "completed_re",
                    "completed_im",
                    "log_x_plus_gamma",
                ],
            );
            t.row(vec![
                num(*x),
                num(p),
                num(1.0 + 1.0 / x.ln()),
                num(s.re),
                num(s.im),
                num(tail),
                num(completed.re),
                num(completed.im),
                num(x.ln() + EULER_GAMMA),
            ]);
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Corr {
            file,
            x,
            h1,
            h2,
            window: big_h,
        } => {
            let w = window(&read_seqfile(file)?)?;
            let c = log_avg_correlation(&w, *h1, *h2, *x)?;
            let v = window_variance(&w, *big_h, *x)?;
            let mut t = Table::new(
                seed,
                &["X", "h1", "h2", "harmonic", "corr_re", "corr_im", "H", "window_variance"],
            );
            t.row(vec![
                num(*x),
                h1.to_string(),
                h2.to_string(),
                num(harmonic_range(*x)),
                num(c.re),
                num(c.im),
                big_h.to_string(),
                num(v),
            ]);
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Reduce {
            construction,
            primes,
            modulus,
        } => {
            let table = table_for(primes.iter().copied().max().unwrap_or(2))?;
            let seq = specs::factored(construction, table)?;
            let f = build_f(seq.as_ref(), primes, *modulus)?;
            let dist = FreqDistribution::from_transform(&fourier_transform(&f));
            let xi = dist.sample_seeded(substream(seed, "reduce"))?;
            let mut t = Table::new(seed, &["xi", "weight"]);
            t.comment(format!("total={}", num(dist.total())));
            t.comment(format!("sampled_xi={}", join(&xi)));
            for (i, w) in dist.weights().iter().enumerate() {
                t.row(vec![join(&dist.coords(i)), num(*w)]);
            }
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Identity {
            construction,
            primes,
            modulus,
            n,
        } => {
            let f = if let Some(dim) = construction.strip_prefix("random:") {
                let dim: usize = dim.parse().map_err(|_| input("random:<D> needs a dimension"))?;
                GroupArray::random_unit_seeded(*modulus, primes.len(), dim, substream(seed, "identity"))?
            } else {
                let table = table_for(primes.iter().copied().max().unwrap_or(2))?;
                build_f(specs::factored(construction, table)?.as_ref(), primes, *modulus)?
            };
            let r = discrepancy_identity_check(&f, primes, *n)?;
            let agree = r.agrees(1e-9);
            let mut t = Table::new(seed, &["n", "lhs", "rhs", "agree"]);
            t.row(vec![n.to_string(), num(r.lhs), num(r.rhs), agree.to_string()]);
            Ok(Output {
                text: t.render(fmt),
                code: if agree { 0 } else { 1 },
            })
        }
        Command::Mc { n, trials } => {
            if n.is_empty() {
                return Err(input("give at least one --n"));
            }
            let model = BccModel::ternary();
            let mut t = Table::new(
                seed,
                &["n", "trials", "mean", "std_dev", "tolerance", "expected", "within"],
            );
            for &m in n {
                let est = mc_second_moment(&model, m, *trials, substream(seed, &format!("mc:{m}")))?;
                let expected = count_digit(m, 3, 1)? as f64;
                t.row(vec![
                    m.to_string(),
                    trials.to_string(),
                    num(est.mean),
                    num(est.std_dev),
                    num(est.tolerance()),
                    num(expected),
                    est.contains(expected).to_string(),
                ]);
            }
            Ok(Output::ok(t.render(fmt)))
        }
        Command::Adversary { eps, k } => {
            let eps: Vec<i8> = if eps.is_empty() {
                let model = BccModel::ternary().sample(*k, substream(seed, "adversary"))?;
                std::iter::once(1).chain(model.signs().iter().copied()).collect()
            } else {
                eps.iter()
                    .map(|s| match s.as_str() {
                        "+1" | "1" | "+" => Ok(1),
                        "-1" | "-" => Ok(-1),
                        _ => Err(input(format!("{s:?} is not a sign"))),
                    })
                    .collect::<Result<_, _>>()?
            };
            let a = adversarial_bcc(&eps)?;
            let k = eps.len() - 1;
            let holds = 2 * a.value >= (k + 1) as u64;
            let mut t = Table::new(seed, &["k", "eps", "n", "value", "majority", "lower_bound"]);
            let eps_text: Vec<String> = eps.iter().map(|&e| if e > 0 { "+1".into() } else { "-1".into() }).collect();
            t.row(vec![
                k.to_string(),
                eps_text.join(" "),
                a.n.to_string(),
                a.value.to_string(),
                a.majority.to_string(),
                num((k + 1) as f64 / 2.0),
            ]);
            Ok(Output {
                text: t.render(fmt),
                code: if holds { 0 } else { 1 },
            })
        }
        Command::Qform {
            n,
            c,
            b,
            tol,
            allow_large,
        } => {
            let mut weights = BTreeMap::new();
            for item in c {
                let parts: Vec<&str> = item.split(':').collect();
                let [m, d, w] = parts.as_slice() else {
                    return Err(input(format!("weight {item:?} is not m:d:c")));
                };
                let parse = |s: &str| s.parse::<usize>().map_err(|_| input(format!("bad index in {item:?}")));
                let w: f64 = w.parse().map_err(|_| input(format!("bad weight in {item:?}")))?;
                *weights.entry((parse(m)?, parse(d)?)).or_insert(0.0) += w;
            }
            let b = match b.as_slice() {
                [x] => vec![*x; *n],
                _ => b.clone(),
            };
            let r = quadratic_form_check(&weights, &b, *n, *tol, *allow_large)?;
            let mut t = Table::new(seed, &["N", "is_psd", "min_eigenvalue"]);
            t.row(vec![n.to_string(), r.is_psd.to_string(), num(r.min_eigenvalue)]);
            Ok(Output {
                text: t.render(fmt),
                code: if r.is_psd { 0 } else { 1 },
            })
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[allow(clippy::too_many_arguments)]
fn gen(
    construction: Construction,
    n: Option<u64>,
    q: u64,
    index: usize,
    k: usize,
    overrides: &str,
    seed: u64,
    fmt: crate::output::Format,
) -> Result<Output, CliError> {
    let need_n = || n.ok_or_else(|| input("--N is required for this construction"));
    let file = match construction {
        Construction::Character => {
            let chi = specs::character(q, index)?;
            SeqFile {
                kind: Kind::Character,
                seed: Some(seed),
                values: (1..=need_n()?).map(|m| chi.eval(m)).collect(),
            }
        }
        Construction::Bcc | Construction::BccVariant => {
            let big_n = need_n()?;
            let at_q = if construction == Construction::Bcc { 1 } else { -1 };
            let f = lifted_legendre(q, at_q, table_for(big_n)?)?;
            SeqFile::from_signs(&signs_of(&f.materialize(big_n)?)?, Some(seed))
        }
        Construction::VectorBcc => {
            let big_n = need_n()?;
            let chi = legendre_character(3)?;
            let mut t = Table::new(seed, &["n", "coordinate", "re", "im"]);
            for m in 1..=big_n {
                let (a, rest) = valuation(m, 3);
                let z = chi.eval(rest);
                t.row(vec![m.to_string(), a.to_string(), num(z.re), num(z.im)]);
            }
            return Ok(Output::ok(t.render(fmt)));
        }
        Construction::RandomBcc => {
            let g = random_bcc(k, substream(seed, "random-bcc"))?;
            let cap = 3u64
                .checked_pow(k as u32 + 1)
                .ok_or_else(|| input("k too large"))?
                - 1;
            let big_n = n.unwrap_or(cap);
            if big_n > cap {
                return Err(input(format!("with k = {k} the model is determined only up to {cap}")));
            }
            let values: Vec<Complex64> = (1..=big_n).map(|m| g.eval(m)).collect::<Result<_, _>>()?;
            let w = SeqWindow::new(values)?;
            SeqFile::from_signs(&signs_of(&w)?, Some(seed))
        }
        Construction::FactorialAlt => {
            SeqFile::from_signs(&factorial_alternating_signs(need_n()? as usize), Some(seed))
        }
        Construction::Chi2Family => {
            let mut h = BTreeMap::new();
            for item in overrides.split(',').filter(|s| !s.is_empty()) {
                let parts: Vec<&str> = item.split(':').collect();
                let [p, j, s] = parts.as_slice() else {
                    return Err(input(format!("override {item:?} is not p:j:sign")));
                };
                let p: u64 = p.parse().map_err(|_| input(format!("bad prime in {item:?}")))?;
                let j: u32 = j.parse().map_err(|_| input(format!("bad exponent in {item:?}")))?;
                let s: i8 = match *s {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    _ => return Err(input(format!("bad sign in {item:?}"))),
                };
                h.insert((p, j), s);
            }
            let probe = chi2_family(&h, table_for(100)?)?;
            let big_n = n.unwrap_or(probe.period);
            let fam = chi2_family(&h, table_for(big_n)?)?;
            SeqFile::from_signs(&signs_of(&fam.f.materialize(big_n)?)?, Some(seed))
        }
    };
    Ok(Output::ok(file.render()))
}

fn growth(
    construction: GrowthConstruction,
    lengths: &[u64],
    log_base: f64,
    q: u64,
    index: usize,
    seed: u64,
    fmt: crate::output::Format,
) -> Result<Output, CliError> {
    let max_n = lengths.iter().copied().max().unwrap_or(1);
    let mut t = Table::new(
        seed,
        &["N", "sup", "sup_over_log", "sup_over_sqrt_log", "sup_over_n"],
    );
    t.comment(format!("construction={construction:?} log_base={}", num(log_base)));
    let table = match construction {
        GrowthConstruction::Bcc | GrowthConstruction::BccVariant => Some(table_for(max_n)?),
        _ => None,
    };
    let chi3 = legendre_character(3)?;
    for &big_n in lengths {
        if big_n == 0 {
            return Err(input("lengths must be positive"));
        }
        let sup = match construction {
            GrowthConstruction::Bcc | GrowthConstruction::BccVariant => {
                let at3 = if construction == GrowthConstruction::Bcc { 1 } else { -1 };
                let f = lifted_legendre(3, at3, table.clone().expect("table built above"))?;
                hap_discrepancy_cm(&f, big_n)?.sup
            }
            GrowthConstruction::Constant => big_n as f64,
            GrowthConstruction::FactorialAlt => {
                let w = SeqWindow::from_signs(&factorial_alternating_signs(big_n as usize))?;
                hap_discrepancy(&w).sup
            }
            GrowthConstruction::Character => {
                let chi = specs::character(q, index)?;
                let w = SeqWindow::new((1..=big_n).map(|m| chi.eval(m)).collect())?;
                hap_discrepancy(&w).sup
            }
            GrowthConstruction::VectorBcc => {
                let mut best = 0.0f64;
                for d in 1..=big_n {
                    for m in 1..=big_n / d {
                        best = best.max(vector_bcc_norm(m, d, 3, &chi3)?);
                    }
                }
                best
            }
        };
        let log = exact_log(big_n, log_base);
        t.row(vec![
            big_n.to_string(),
            num(sup),
            num(sup / log),
            num(sup / log.sqrt()),
            num(sup / big_n as f64),
        ]);
    }
    Ok(Output::ok(t.render(fmt)))
}

/// `log_b N`, exact when `b` is an integer and `N` one of its powers.
fn exact_log(n: u64, base: f64) -> f64 {
    if base.fract() == 0.0 && base >= 2.0 {
        let b = base as u64;
        let (mut p, mut k) = (1u64, 0u32);
        while p < n {
            match p.checked_mul(b) {
                Some(next) => {
                    p = next;
                    k += 1;
                }
                None => break,
            }
        }
        if p == n {
            return k as f64;
        }
    }
    (n as f64).ln() / base.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_differ_and_are_stable() {
        assert_eq!(substream(7, "mc"), substream(7, "mc"));
        assert_ne!(substream(7, "mc"), substream(7, "reduce"));
        assert_ne!(substream(7, "mc"), substream(8, "mc"));
    }

    #[test]
    fn logs_of_powers_are_exact() {
        assert_eq!(exact_log(243, 3.0), 5.0);
        assert_eq!(exact_log(1, 3.0), 0.0);
        assert!((exact_log(100, 10.0) - 2.0).abs() < 1e-15);
        assert!((exact_log(50, 3.0) - 50f64.ln() / 3f64.ln()).abs() < 1e-15);
    }
}
