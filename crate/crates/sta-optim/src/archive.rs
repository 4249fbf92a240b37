//! Bounded history of past incumbent solutions.

use std::collections::VecDeque;

use crate::error::Error;
use crate::state::StateVector;
use crate::RandomSource;
use crate::Result;

/// FIFO archive of previous best solutions, most recent last.
///
/// The predictive translation operator draws its historical states from
/// here. Entries stay pairwise distinct; pushing a vector already present
/// is a no-op, and the oldest entry is evicted once capacity is exceeded.
#[derive(Clone, Debug)]
pub struct BestArchive {
    entries: VecDeque<StateVector>,
    capacity: usize,
}

impl BestArchive {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "archive capacity must be positive");
        Self {
            entries: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Most recently archived solution.
    pub fn last(&self) -> Option<&StateVector> {
        self.entries.back()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateVector> {
        self.entries.iter()
    }

    /// Appends `s` unless an identical vector is already stored; evicts the
    /// oldest entry when full.
    pub fn push(&mut self, s: StateVector) {
        if self.entries.iter().any(|e| *e == s) {
            return;
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back(s);
    }

    /// Two distinct entries drawn uniformly without replacement. The first
    /// plays the role of the newer historical state.
    pub fn sample_pair(&self, rng: &mut RandomSource) -> Result<(&StateVector, &StateVector)> {
        if self.entries.len() < 2 {
            return Err(Error::InsufficientHistory {
                len: self.entries.len(),
                need: 2,
            });
        }
        let first = rng.index(self.entries.len());
        let mut second = rng.index(self.entries.len() - 1);
        if second >= first {
            second += 1;
        }
        Ok((&self.entries[first], &self.entries[second]))
    }
}
