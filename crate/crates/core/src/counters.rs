//! Process-wide counters for the expensive group operations.
//!
//! Counting is off by default; when disabled each hook is a single relaxed
//! atomic load. Multi-exponentiations count one exponentiation per base and
//! multi-pairings one pairing per (G1, G2) pair, so the totals track the
//! cost model used to tune the batch size.

use serde::Serialize;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Pairing,
    G1Exp,
    G2Exp,
    GtExp,
    FieldOp,
}

const OPS: usize = 5;

static MEASURE_LOCK: Mutex<()> = Mutex::new(());
static ENABLED: AtomicBool = AtomicBool::new(false);
static COUNTS: [AtomicU64; OPS] = [
    AtomicU64::new(0),
    AtomicU64::new(0),
    AtomicU64::new(0),
    AtomicU64::new(0),
    AtomicU64::new(0),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub pairings: u64,
    pub g1_exps: u64,
    pub g2_exps: u64,
    pub gt_exps: u64,
    pub field_ops: u64,
}

impl OpCounts {
    /// Pairings plus exponentiations in every group.
    pub fn crypto_ops(&self) -> u64 {
        self.pairings + self.g1_exps + self.g2_exps + self.gt_exps
    }
}

#[inline]
pub fn record(op: Op, amount: usize) {
    if ENABLED.load(Ordering::Relaxed) {
        COUNTS[op as usize].fetch_add(amount as u64, Ordering::Relaxed);
    }
}

pub fn enable() {
    ENABLED.store(true, Ordering::SeqCst);
}

pub fn disable() {
    ENABLED.store(false, Ordering::SeqCst);
}

pub fn is_enabled() -> bool {
    ENABLED.load(Ordering::SeqCst)
}

pub fn reset() {
    for c in &COUNTS {
        c.store(0, Ordering::SeqCst);
    }
}

pub fn snapshot() -> OpCounts {
    let read = |op: Op| COUNTS[op as usize].load(Ordering::SeqCst);
    OpCounts {
        pairings: read(Op::Pairing),
        g1_exps: read(Op::G1Exp),
        g2_exps: read(Op::G2Exp),
        gt_exps: read(Op::GtExp),
        field_ops: read(Op::FieldOp),
    }
}

/// Runs `f` with counting enabled from zero and returns what it recorded.
///
/// Measurements are serialized against each other, but the counters are
/// global: work done on other threads while `f` runs is counted too.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, OpCounts) {
    let _guard = MEASURE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let was_enabled = is_enabled();
    reset();
    enable();
    let out = f();
    let counts = snapshot();
    if !was_enabled {
        disable();
    }
    (out, counts)
}
