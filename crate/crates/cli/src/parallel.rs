//! Multi-threaded exhaustive checking with deterministic results.
//!
//! The assignment space is cut into fixed-size chunks handed out in
//! increasing order. A worker stops once the next chunk starts past the
//! least violation found so far, so every chunk below the final answer is
//! always scanned in full and the reported counterexample is the same as
//! the sequential one.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use kites::check::{CheckReport, Checker};
use kites::{Identity, KiteError, Shape};

const MIN_CHUNK: u128 = 1 << 10;
const MAX_CHUNK: u128 = 1 << 18;

/// Number of workers to use when none is requested.
pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn par_check(
    shape: &Shape,
    identity: &Identity,
    bound: u32,
    cap: u64,
    workers: usize,
) -> Result<CheckReport, KiteError> {
    let checker = Checker::new(shape, identity, bound, cap)?;
    par_run(&checker, workers)
}

pub fn par_run(checker: &Checker<'_>, workers: usize) -> Result<CheckReport, KiteError> {
    let total = checker.total();
    if workers <= 1 || total <= MIN_CHUNK {
        return checker.run();
    }
    let chunk = (total / (workers as u128 * 16)).clamp(MIN_CHUNK, MAX_CHUNK);
    let chunks = total.div_ceil(chunk) as u64;
    let next = AtomicU64::new(0);
    // index of the least violation (or error) seen so far
    let best = AtomicU64::new(u64::MAX);
    let failure: Mutex<Option<(u64, KiteError)>> = Mutex::new(None);

    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                if c >= chunks {
                    break;
                }
                let start = c as u128 * chunk;
                if start >= best.load(Ordering::Relaxed) as u128 {
                    break;
                }
                match checker.first_violation(start..start + chunk) {
                    Ok(None) => {}
                    Ok(Some(i)) => {
                        best.fetch_min(i as u64, Ordering::Relaxed);
                        break;
                    }
                    Err(e) => {
                        let mut f = failure.lock().unwrap();
                        if f.as_ref().is_none_or(|(at, _)| start as u64 <= *at) {
                            *f = Some((start as u64, e));
                        }
                        best.fetch_min(start as u64, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });

    let best = best.into_inner();
    if let Some((at, e)) = failure.into_inner().unwrap() {
        if at <= best {
            return Err(e);
        }
    }
    Ok(checker.report((best != u64::MAX).then_some(best as u128)))
}

/// Maps `f` over `items` on `workers` threads, keeping input order.
pub fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicU64::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..workers.min(items.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed) as usize;
                if k >= items.len() {
                    break;
                }
                let r = f(&items[k]);
                *slots[k].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot is filled"))
        .collect()
}
