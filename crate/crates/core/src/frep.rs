//! Repositioning-factor controller and its ring of saved best fitnesses.

use crate::config::{FrepMode, FrepPolicy};

/// Ring slot (1-based) written at step `j`: `j mod n_saved`, with 0 mapped to
/// `n_saved`. Consecutive slots therefore do not always hold consecutive
/// improvements.
pub fn saved_slot_index(j: usize, n_saved: usize) -> usize {
    match j % n_saved {
        0 => n_saved,
        s => s,
    }
}

/// Saved best fitnesses, addressed 1..=n_saved.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedRing {
    slots: Vec<f64>,
}

impl SavedRing {
    /// Every slot starts at `initial` (the step-0 best fitness).
    pub fn new(n_saved: usize, initial: f64) -> Self {
        Self { slots: vec![initial; n_saved] }
    }

    pub fn from_slots(slots: Vec<f64>) -> Self {
        Self { slots }
    }

    pub fn get(&self, slot: usize) -> f64 {
        self.slots[slot - 1]
    }

    pub fn set(&mut self, slot: usize, value: f64) {
        self.slots[slot - 1] = value;
    }

    pub fn slots(&self) -> &[f64] {
        &self.slots
    }

    /// True when the last slot sits within `tol` of the mean of the last
    /// `n_sat` slots.
    pub fn stalled(&self, n_sat: usize, tol: f64) -> bool {
        let n = self.slots.len();
        let tail = &self.slots[n - n_sat..];
        let mean = tail.iter().sum::<f64>() / n_sat as f64;
        (self.slots[n - 1] - mean).abs() <= tol
    }
}

/// Next repositioning factor.
pub fn update_frep(ring: &SavedRing, frep: f64, policy: &FrepPolicy) -> f64 {
    match policy.mode {
        FrepMode::Adaptive => {
            if !ring.stalled(policy.n_sat, policy.fit_tol) {
                return frep;
            }
            let next = frep + policy.increment;
            if next >= 1.0 {
                policy.init
            } else {
                next
            }
        }
        FrepMode::Cycling { floor } => {
            let next = frep + policy.increment;
            if next > 1.0 {
                floor
            } else {
                next
            }
        }
        FrepMode::Fixed => frep,
    }
}
