//! Worker fan-out over scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use mindist_core::mim::{Mim, MimEvent, MimRun};
use mindist_core::oracle::{check_budget, merge_parts, sweep_range, ExactResult};
use mindist_core::LinearCode;

use crate::error::{Error, Result};

/// Exhaustive sweep split into contiguous Gray-index chunks. The merge is
/// order-independent, so the result equals the sequential one.
pub fn exact(code: &LinearCode, budget: Option<usize>, enumerator: bool, workers: usize) -> Result<ExactResult> {
    check_budget(code, budget)?;
    let total = 1u64 << code.k();
    let workers = workers.max(1);
    let chunks = (workers as u64 * 4).min(total);
    let next = AtomicUsize::new(0);
    let parts = Mutex::new(Vec::new());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed) as u64;
                if c >= chunks {
                    break;
                }
                let (lo, hi) = (total / chunks * c, if c + 1 == chunks { total } else { total / chunks * (c + 1) });
                let part = sweep_range(code, lo, hi, enumerator);
                parts.lock().unwrap().push(part);
            });
        }
    });
    Ok(merge_parts(code, parts.into_inner().unwrap())?)
}

/// MIM trials claimed by workers in index order. Each trial starts from the
/// current shared cap and witness and is merged back when it ends, so the
/// explored schedule depends on timing when `workers > 1`.
pub fn mim(search: &Mim<'_>, workers: usize, observer: &(dyn Fn(&MimEvent) + Sync)) -> Result<MimRun> {
    let nb_test = search.config().nb_test;
    let shared = Mutex::new((search.initial_state(), Vec::<MimEvent>::new()));
    let next = AtomicUsize::new(0);
    let failure = Mutex::new(None);
    thread::scope(|s| {
        for _ in 0..workers.max(1) {
            s.spawn(|| loop {
                let trial = next.fetch_add(1, Ordering::Relaxed);
                if trial >= nb_test || failure.lock().unwrap().is_some() {
                    break;
                }
                let start = shared.lock().unwrap().0.clone();
                let mut local = start.clone();
                let mut found = Vec::new();
                if let Err(e) = search.run_trial(trial, &mut local, &mut |e| found.push(e.clone())) {
                    *failure.lock().unwrap() = Some(e);
                    break;
                }
                local.decodes -= start.decodes;
                local.trials_done -= start.trials_done;
                let mut g = shared.lock().unwrap();
                let (mut best, mut had) = (g.0.d_t, g.0.witness.is_some());
                g.0.merge(&local);
                for e in found {
                    if e.weight < best || !had {
                        (best, had) = (e.weight, true);
                        observer(&e);
                        g.1.push(e);
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(Error::Core(e));
    }
    let (state, events) = shared.into_inner().unwrap();
    Ok(MimRun { estimate: search.estimate(&state), state, events })
}
