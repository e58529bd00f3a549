//! Sweeps of verification checks over many intervals, sequential or on a
//! rayon pool.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::appendix::{
    verify_dh_symmetry_all, verify_hw_projection_all, verify_lemma_all, ConstraintReading,
};
use crate::doubles::{
    product_outcome, verify_bologna_all, verify_congettura, verify_em0, verify_standard,
    verify_strong_ds, ProductCase,
};
use crate::error::{Error, Result};
use crate::hcd::enumerate_hcds;
use crate::interval::Interval;
use crate::perm::Permutation;
use crate::report::{CheckKind, Record, Status};
use crate::rpoly::{default_orders, verify_dyer, RtildeCache};

pub const MAX_SWEEP_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sample" => Ok(Mode::Sample),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample => "sample",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n: usize,
    pub mode: Mode,
    pub sample_size: usize,
    pub seed: Option<u64>,
    /// Upper bound on `|[u,v]|`; `None` means unbounded.
    pub max_interval_size: Option<usize>,
    pub checks: Vec<CheckKind>,
    /// Constraint reading for the increasing-path lemma.
    pub lemma_reading: ConstraintReading,
    /// Worker threads; `None` lets the pool decide. Ignored when sequential.
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Adds `ms` to every record, which makes report bodies nondeterministic.
    #[serde(skip)]
    pub timings: bool,
}

impl SweepConfig {
    pub fn new(n: usize, mode: Mode, checks: Vec<CheckKind>) -> Self {
        Self {
            n,
            mode,
            sample_size: 0,
            seed: None,
            max_interval_size: None,
            checks,
            lemma_reading: ConstraintReading::Coatom,
            threads: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_SWEEP_RANK {
            return Err(Error::Config(format!(
                "n must be between 1 and {MAX_SWEEP_RANK}"
            )));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        match self.mode {
            Mode::Exhaustive => {
                let pairwise = self.checks.iter().any(|c| c.is_pairwise());
                let limit = if pairwise { 4 } else { 5 };
                if self.n > limit {
                    return Err(Error::Config(format!(
                        "exhaustive mode supports n ≤ {limit} for the selected checks; use sample mode"
                    )));
                }
            }
            Mode::Sample => {
                if self.seed.is_none() {
                    return Err(Error::Config("sample mode requires a seed".into()));
                }
                if self.sample_size == 0 {
                    return Err(Error::Config(
                        "sample mode requires a positive sample size".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// SHA-256 over the configuration and the interpretation conventions.
    pub fn fingerprint(&self) -> String {
        let canonical = json!({ "config": self, "conventions": conventions() });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Interpretation choices that affect results, recorded in every report.
pub fn conventions() -> serde_json::Value {
    json!({
        "edge_direction": "x -> xt when l(x) < l(xt), labeled by t",
        "inflow_sources": "restricted to [u,v]",
        "hypercube_vertices": "restricted to the interval",
        "antichain_cubes": "top-spanned by in-edges of p, bottom u",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    /// Runs on a rayon pool with the given number of threads (default: all
    /// cores). Without the `parallel` feature this runs sequentially.
    Parallel {
        threads: Option<usize>,
    },
}

impl Executor {
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match *self {
            Executor::Sequential => Ok(items.iter().map(f).collect()),
            Executor::Parallel { threads } => parallel_map(items, f, threads),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], f: F, threads: Option<usize>) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], f: F, _threads: Option<usize>) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    Ok(items.iter().map(f).collect())
}

/// All pairs `u ≤ v` in `S_n`, in lexicographic order.
pub fn comparable_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let mut out = Vec::new();
    for &u in &all {
        for &v in &all {
            if u.bruhat_leq(&v) {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn interval_size(u: &Permutation, v: &Permutation) -> usize {
    Permutation::all(u.n())
        .filter(|x| u.bruhat_leq(x) && x.bruhat_leq(v))
        .count()
}

/// `count` distinct comparable pairs, uniform among those with
/// `|[u,v]| ≤ max_size`: a partial Fisher–Yates shuffle of all comparable
/// pairs driven by a ChaCha8 stream seeded with `seed`. Returns fewer pairs if
/// the candidates run out.
pub fn sample_pairs(
    n: usize,
    count: usize,
    seed: u64,
    max_size: Option<usize>,
) -> Vec<(Permutation, Permutation)> {
    let mut pool = comparable_pairs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut next = 0;
    while out.len() < count && next < pool.len() {
        let pick = rng.random_range(next..pool.len());
        pool.swap(next, pick);
        let (u, v) = pool[next];
        next += 1;
        if max_size.is_none_or(|m| interval_size(&u, &v) <= m) {
            out.push((u, v));
        }
    }
    out
}

/// One unit of sweep work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Interval(Permutation, Permutation),
    /// `[u₁,v₁] × [u₂,v₂]` realised as `[u₁⊕u₂, v₁⊕v₂]`.
    Product {
        left: (Permutation, Permutation),
        right: (Permutation, Permutation),
    },
}

fn product_jobs(n: usize) -> Vec<Job> {
    let mut out = Vec::new();
    for a in 2..n.saturating_sub(1) {
        let b = n - a;
        let rights = comparable_pairs(b);
        for left in comparable_pairs(a) {
            for &right in &rights {
                out.push(Job::Product { left, right });
            }
        }
    }
    out
}

/// The jobs described by the configuration, in a fixed order.
pub fn plan(config: &SweepConfig) -> Vec<Job> {
    let per_interval = config.checks.iter().any(|&c| c != CheckKind::Product);
    let mut jobs = Vec::new();
    if per_interval {
        let pairs = match config.mode {
            Mode::Exhaustive => comparable_pairs(config.n)
                .into_iter()
                .filter(|(u, v)| {
                    config
                        .max_interval_size
                        .is_none_or(|m| interval_size(u, v) <= m)
                })
                .collect(),
            Mode::Sample => sample_pairs(
                config.n,
                config.sample_size,
                config.seed.unwrap_or_default(),
                config.max_interval_size,
            ),
        };
        jobs.extend(pairs.into_iter().map(|(u, v)| Job::Interval(u, v)));
    }
    if config.checks.contains(&CheckKind::Product) {
        let mut products: Vec<Job> = product_jobs(config.n)
            .into_iter()
            .filter(|job| match (job, config.max_interval_size) {
                (Job::Product { left, right }, Some(m)) => {
                    interval_size(&left.0, &left.1) * interval_size(&right.0, &right.1) <= m
                }
                _ => true,
            })
            .collect();
        if config.mode == Mode::Sample {
            let mut rng =
                ChaCha8Rng::seed_from_u64(config.seed.unwrap_or_default() ^ 0x005e_ed0f_9a1e);
            let take = config.sample_size.min(products.len());
            for k in 0..take {
                let pick = rng.random_range(k..products.len());
                products.swap(k, pick);
            }
            products.truncate(take);
        }
        jobs.extend(products);
    }
    jobs
}

fn timed(timings: bool, f: impl FnOnce() -> Result<Record>) -> Result<Record> {
    let start = Instant::now();
    let mut record = f()?;
    if timings {
        record.ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(record)
}

/// Runs the selected per-interval checks on one interval.
pub fn check_interval(iv: &Interval, config: &SweepConfig) -> Result<Vec<Record>> {
    let timings = config.timings;
    let mut out = Vec::new();
    for &check in &config.checks {
        let record = match check {
            CheckKind::Dyer => timed(timings, || verify_dyer(iv, &default_orders(iv.n())))?,
            CheckKind::StandardHcd => timed(timings, || verify_standard(iv))?,
            CheckKind::Congettura => timed(timings, || verify_congettura(iv))?,
            CheckKind::Em0 => timed(timings, || verify_em0(iv))?,
            CheckKind::StrongDs => timed(timings, || verify_strong_ds(iv))?,
            CheckKind::Bologna => timed(timings, || verify_bologna_all(iv))?,
            CheckKind::CosimpleDh => timed(timings, || verify_dh_symmetry_all(iv))?,
            CheckKind::HwBijection => timed(timings, || verify_hw_projection_all(iv))?,
            CheckKind::LemmaPaths => timed(timings, || {
                verify_lemma_all(iv, config.lemma_reading, usize::MAX)
            })?,
            CheckKind::Product => continue,
        };
        out.push(record);
    }
    Ok(out)
}

/// Product check over every pair of amazing decomposition pairs of the two
/// factors; one aggregated record per product interval.
pub fn check_product(left: &Interval, right: &Interval, timings: bool) -> Result<Record> {
    let start = Instant::now();
    let la = enumerate_hcds(left, true);
    let ra = enumerate_hcds(right, true);
    let mut cases = 0usize;
    let mut transferred = 0usize;
    let mut product = None;
    let mut failure = None;
    'outer: for &z1 in &la {
        for &z1b in &la {
            for &z2 in &ra {
                for &z2b in &ra {
                    let case = ProductCase {
                        left,
                        right,
                        left_pair: (z1, z1b),
                        right_pair: (z2, z2b),
                    };
                    let (iv, outcome) = product_outcome(&case)?;
                    cases += 1;
                    if outcome.components_symmetric && outcome.product_symmetric {
                        transferred += 1;
                    }
                    if outcome.status() == Status::Fail {
                        failure = Some((iv, outcome, z1.direct_sum(&z2)?, z1b.direct_sum(&z2b)?));
                        break 'outer;
                    }
                    product.get_or_insert(iv);
                }
            }
        }
    }
    let mut record = match (failure, product) {
        (Some((iv, o, z, zb)), _) => Record::new(CheckKind::Product, &iv, Status::Fail)
            .with_pair(Some(z), Some(zb))
            .with_detail(json!({
                "isomorphic": o.isomorphic,
                "amazing": o.amazing,
                "bullets": o.bullets,
                "components_symmetric": o.components_symmetric,
                "product_symmetric": o.product_symmetric,
            })),
        (None, Some(iv)) => Record::new(CheckKind::Product, &iv, Status::Pass)
            .with_detail(json!({ "cases": cases, "symmetric_transfers": transferred })),
        (None, None) => {
            let iv = Interval::with_cache(
                left.u().direct_sum(&right.u())?,
                left.v().direct_sum(&right.v())?,
                left.rtilde_cache().clone(),
            )?;
            Record::new(CheckKind::Product, &iv, Status::Skip)
        }
    };
    if timings {
        record.ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(record)
}

pub fn run_job(job: &Job, config: &SweepConfig, cache: &Arc<RtildeCache>) -> Result<Vec<Record>> {
    match job {
        Job::Interval(u, v) => {
            let iv = Interval::with_cache(*u, *v, cache.clone())?;
            check_interval(&iv, config)
        }
        Job::Product { left, right } => {
            let l = Interval::with_cache(left.0, left.1, cache.clone())?;
            let r = Interval::with_cache(right.0, right.1, cache.clone())?;
            Ok(vec![check_product(&l, &r, config.timings)?])
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub header: serde_json::Value,
    pub records: Vec<Record>,
}

impl SweepReport {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// Any record with status `FAIL`; conjecture checks never produce one.
    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.header)?;
        for r in &self.records {
            writeln!(out, "{}", r.to_json_line())?;
        }
        Ok(())
    }

    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        for r in &self.records {
            let mut line = format!("{:<8} {:<13} [{},{}]", r.status, r.check.name(), r.u, r.v);
            if let Some(z) = r.z {
                line.push_str(&format!(" z={z}"));
            }
            if let Some(z2) = r.z2 {
                line.push_str(&format!(" z2={z2}"));
            }
            if let Some(ms) = r.ms {
                line.push_str(&format!(" {ms}ms"));
            }
            writeln!(out, "{line}")?;
        }
        writeln!(
            out,
            "{} records: {} PASS, {} FAIL, {} FINDING, {} SKIP",
            self.records.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Finding),
            self.count(Status::Skip)
        )
    }
}

pub fn run_sweep(
    config: &SweepConfig,
    cache: Arc<RtildeCache>,
    executor: Executor,
) -> Result<SweepReport> {
    config.validate()?;
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let header = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "fingerprint": config.fingerprint(),
        "config": config,
        "conventions": conventions(),
        "started": started,
    });
    let jobs = plan(config);
    let results = executor.map(&jobs, |job| run_job(job, config, &cache))?;
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    Ok(SweepReport { header, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut c = SweepConfig::new(3, Mode::Exhaustive, CheckKind::ALL.to_vec());
        assert!(c.validate().is_ok());
        c.n = 5;
        assert!(c.validate().is_err());
        c.checks = vec![CheckKind::Dyer, CheckKind::StandardHcd];
        assert!(c.validate().is_ok());
        c.n = 6;
        assert!(c.validate().is_err());
        c.mode = Mode::Sample;
        c.sample_size = 5;
        assert!(c.validate().is_err());
        c.seed = Some(7);
        assert!(c.validate().is_ok());
        c.n = 7;
        assert!(c.validate().is_err());
    }

    #[test]
    fn pair_counts() {
        assert_eq!(comparable_pairs(2).len(), 3);
        assert_eq!(comparable_pairs(3).len(), 19);
        let brute = Permutation::all(3).count() * Permutation::all(3).count();
        assert!(comparable_pairs(3).len() < brute);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_pairs(5, 20, 7, Some(30));
        let b = sample_pairs(5, 20, 7, Some(30));
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a
            .iter()
            .all(|(u, v)| u.bruhat_leq(v) && interval_size(u, v) <= 30));
        assert_ne!(a, sample_pairs(5, 20, 8, Some(30)));
    }

    #[test]
    fn fingerprint_tracks_config() {
        let a = SweepConfig::new(3, Mode::Exhaustive, vec![CheckKind::Dyer]);
        let mut b = a.clone();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.threads = Some(2);
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.n = 4;
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }

    #[test]
    fn executors_agree_on_s3() {
        let config = SweepConfig::new(3, Mode::Exhaustive, CheckKind::ALL.to_vec());
        let cache = Arc::new(RtildeCache::in_memory());
        let seq = run_sweep(&config, cache.clone(), Executor::Sequential).unwrap();
        let par = run_sweep(&config, cache, Executor::Parallel { threads: Some(2) }).unwrap();
        assert_eq!(seq.records, par.records);
        assert!(
            !seq.has_failures(),
            "{:?}",
            seq.records.iter().find(|r| r.status == Status::Fail)
        );
    }
}
