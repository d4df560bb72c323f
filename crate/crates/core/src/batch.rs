//! Data-parallel helpers. With the `parallel` feature work is spread over a
//! rayon pool; without it every helper runs sequentially. Output order always
//! follows input order.

use crate::order2::{analyze_case, CaseVerdict};
use crate::probes::{almost_integrality_probe, DenominatorReport};
use crate::recurrence::{InitialPair, Order2Rec};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Runs `f` on a pool of `jobs` threads (the global pool for `None`).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool");
        return pool.install(f);
    }
    let _ = jobs;
    f()
}

fn decide_one(rec: &Order2Rec) -> CaseVerdict {
    analyze_case(rec).map(|a| a.verdict).expect("decider never errors on built recurrences")
}

pub fn decide_all(recs: &[Order2Rec]) -> Vec<CaseVerdict> {
    map(recs, decide_one)
}

pub fn decide_all_sequential(recs: &[Order2Rec]) -> Vec<CaseVerdict> {
    map_sequential(recs, decide_one)
}

fn probe_one(job: &(Order2Rec, InitialPair), depth: usize, threshold: u64) -> DenominatorReport {
    let terms = job.0.generate_terms(&job.1, depth).expect("leading coefficient nonzero for b0 >= 0");
    almost_integrality_probe(&terms, threshold)
}

/// Denominator reports for `(recurrence, initial pair)` jobs.
pub fn probe_all(jobs: &[(Order2Rec, InitialPair)], depth: usize, threshold: u64) -> Vec<DenominatorReport> {
    map(jobs, |j| probe_one(j, depth, threshold))
}

pub fn probe_all_sequential(jobs: &[(Order2Rec, InitialPair)], depth: usize, threshold: u64) -> Vec<DenominatorReport> {
    map_sequential(jobs, |j| probe_one(j, depth, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::fixtures;

    fn recs() -> Vec<Order2Rec> {
        vec![
            fixtures::motzkin(),
            fixtures::central_trinomial(),
            fixtures::large_schroeder(),
            fixtures::fully_transcendental(),
            fixtures::quadratic_power_line(),
        ]
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(decide_all(&recs()), decide_all_sequential(&recs()));
        let jobs: Vec<_> = recs().into_iter().map(|r| (r, InitialPair::ints(0, 1))).collect();
        assert_eq!(probe_all(&jobs, 60, 50), probe_all_sequential(&jobs, 60, 50));
    }

    #[test]
    fn pool_size_does_not_change_results() {
        let a = with_jobs(Some(1), || decide_all(&recs()));
        let b = with_jobs(Some(4), || decide_all(&recs()));
        assert_eq!(a, b);
    }
}
