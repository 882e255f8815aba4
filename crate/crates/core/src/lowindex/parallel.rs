//! Work-stealing parallel search. Every worker owns a search state; an idle
//! worker takes the bottom (shallowest) pending definition of another
//! worker together with the graph prefix it refers to.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::wordgraph::{Edge, WordGraph};

use super::search::{SearchConfig, SearchState};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub count: u64,
    pub steps: u64,
    pub steals: u64,
    pub peak_depth: usize,
    pub per_worker: Vec<u64>,
}

pub fn parallel_count(p: &Presentation, cfg: &SearchConfig, threads: usize) -> Result<u64> {
    Ok(run(p, cfg, threads, None::<&fn(&WordGraph)>)?.count)
}

/// Calls `visit` on every congruence, from whichever worker finds it.
pub fn parallel_for_each<F>(p: &Presentation, cfg: &SearchConfig, threads: usize, visit: F) -> Result<SearchStats>
where
    F: Fn(&WordGraph) + Sync,
{
    run(p, cfg, threads, Some(&visit))
}

pub fn parallel_stats(p: &Presentation, cfg: &SearchConfig, threads: usize) -> Result<SearchStats> {
    run(p, cfg, threads, None::<&fn(&WordGraph)>)
}

const STEP_BATCH: u64 = 1 << 12;

fn run<F>(p: &Presentation, cfg: &SearchConfig, threads: usize, visit: Option<&F>) -> Result<SearchStats>
where
    F: Fn(&WordGraph) + Sync,
{
    if threads == 0 {
        return Err(Error::input("thread count must be at least 1"));
    }
    let first = SearchState::new(p, cfg)?;
    let mut states = vec![first];
    for _ in 1..threads {
        states.push(SearchState::without_stack(p, cfg)?);
    }
    for s in &mut states {
        s.clear_budget();
    }
    let slots: Vec<Mutex<SearchState>> = states.into_iter().map(Mutex::new).collect();
    let busy = AtomicUsize::new(1);
    let abort = AtomicBool::new(false);
    let total_steps = AtomicU64::new(0);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let budget = cfg.step_budget;

    let results: Vec<(u64, u64, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|me| {
                let slots = &slots;
                let busy = &busy;
                let abort = &abort;
                let total_steps = &total_steps;
                let failure = &failure;
                scope.spawn(move || {
                    let mut working = me == 0;
                    let (mut count, mut steps, mut steals, mut pending_steps) = (0u64, 0u64, 0u64, 0u64);
                    let mut prefix: Vec<Edge> = Vec::new();
                    while !abort.load(Ordering::Relaxed) {
                        if working {
                            let mut st = slots[me].lock().expect("poisoned");
                            match st.step() {
                                Ok(None) => {
                                    working = false;
                                    busy.fetch_sub(1, Ordering::SeqCst);
                                }
                                Ok(Some(found)) => {
                                    steps += 1;
                                    pending_steps += 1;
                                    if found {
                                        count += 1;
                                        if let Some(v) = visit {
                                            let g = st.graph();
                                            drop(st);
                                            v(&g);
                                        }
                                    }
                                }
                                Err(e) => {
                                    *failure.lock().expect("poisoned") = Some(e);
                                    abort.store(true, Ordering::SeqCst);
                                }
                            }
                            if pending_steps >= STEP_BATCH {
                                let total = total_steps.fetch_add(pending_steps, Ordering::Relaxed) + pending_steps;
                                pending_steps = 0;
                                if let Some(b) = budget {
                                    if total > b {
                                        *failure.lock().expect("poisoned") =
                                            Some(Error::Budget(format!("step budget of {b} exhausted")));
                                        abort.store(true, Ordering::SeqCst);
                                    }
                                }
                            }
                            continue;
                        }
                        let mut stolen = None;
                        for off in 1..slots.len() {
                            let victim = (me + off) % slots.len();
                            let mut vs = slots[victim].lock().expect("poisoned");
                            if let Some(pd) = vs.stack.pop_front() {
                                busy.fetch_add(1, Ordering::SeqCst);
                                prefix.clear();
                                prefix.extend_from_slice(&vs.graph.edges()[..pd.edges as usize]);
                                stolen = Some(pd);
                                break;
                            }
                        }
                        match stolen {
                            Some(pd) => {
                                slots[me]
                                    .lock()
                                    .expect("poisoned")
                                    .load_subtree(&prefix, pd.nodes as usize, pd);
                                working = true;
                                steals += 1;
                            }
                            None => {
                                if busy.load(Ordering::SeqCst) == 0 {
                                    break;
                                }
                                std::thread::yield_now();
                            }
                        }
                    }
                    total_steps.fetch_add(pending_steps, Ordering::Relaxed);
                    (count, steps, steals)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    let peak_depth = slots
        .iter()
        .map(|s| s.lock().expect("poisoned").peak_depth())
        .max()
        .unwrap_or(0);
    Ok(SearchStats {
        count: results.iter().map(|r| r.0).sum(),
        steps: results.iter().map(|r| r.1).sum(),
        steals: results.iter().map(|r| r.2).sum(),
        peak_depth,
        per_worker: results.iter().map(|r| r.0).collect(),
    })
}
