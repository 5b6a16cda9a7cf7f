//! Fixed-capacity FIFO of negative embeddings.

use std::collections::VecDeque;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::contrastive::Embedding;
use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-9;

/// Ring buffer of unit-norm embeddings, oldest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QueueRecord", into = "QueueRecord")]
pub struct MemoryQueue {
    capacity: usize,
    dim: usize,
    entries: VecDeque<Embedding>,
}

impl MemoryQueue {
    pub fn new(capacity: usize, dim: usize) -> Self {
        Self {
            capacity,
            dim,
            entries: VecDeque::with_capacity(capacity),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends `batch` in order and evicts the oldest entries beyond capacity.
    /// The whole batch is validated before anything is stored.
    pub fn enqueue_batch(&mut self, batch: &[Embedding]) -> Result<()> {
        for (i, e) in batch.iter().enumerate() {
            if e.dim() != self.dim {
                return Err(Error::shape(format!(
                    "queue holds {}-d embeddings, batch entry {i} has {}",
                    self.dim,
                    e.dim()
                )));
            }
            let norm = e.dot(e).sqrt();
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::arg(format!("batch entry {i} has norm {norm}, expected 1")));
            }
        }
        let skip = batch.len().saturating_sub(self.capacity);
        for e in &batch[skip..] {
            if self.entries.len() == self.capacity {
                self.entries.pop_front();
            }
            self.entries.push_back(e.clone());
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Embedding> {
        self.entries.iter()
    }

    /// Immutable copy of the current contents, oldest first.
    pub fn snapshot(&self) -> QueueSnapshot {
        QueueSnapshot(self.entries.iter().cloned().collect())
    }
}

/// Frozen, cheaply clonable view of a queue's contents.
#[derive(Debug, Clone, PartialEq)]
pub struct QueueSnapshot(Arc<[Embedding]>);

impl QueueSnapshot {
    pub fn empty() -> Self {
        Self(Arc::from(Vec::new()))
    }
}

impl Deref for QueueSnapshot {
    type Target = [Embedding];

    fn deref(&self) -> &[Embedding] {
        &self.0
    }
}

#[derive(Serialize, Deserialize)]
struct QueueRecord {
    capacity: usize,
    dim: usize,
    entries: Vec<Vec<f64>>,
}

impl From<MemoryQueue> for QueueRecord {
    fn from(q: MemoryQueue) -> Self {
        Self {
            capacity: q.capacity,
            dim: q.dim,
            entries: q.entries.into_iter().map(Embedding::into_inner).collect(),
        }
    }
}

impl TryFrom<QueueRecord> for MemoryQueue {
    type Error = Error;

    fn try_from(rec: QueueRecord) -> Result<Self> {
        if rec.entries.len() > rec.capacity {
            return Err(Error::arg("stored queue exceeds its capacity"));
        }
        let mut q = MemoryQueue::new(rec.capacity, rec.dim);
        let batch = rec
            .entries
            .into_iter()
            .map(|v| Embedding::from_unit(v, UNIT_TOL))
            .collect::<Result<Vec<_>>>()?;
        q.enqueue_batch(&batch)?;
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis(i: usize) -> Embedding {
        let mut v = vec![0.0; 8];
        v[i % 8] = 1.0;
        Embedding::from_unit(v, 0.0).unwrap()
    }

    fn ids(q: &[Embedding]) -> Vec<usize> {
        q.iter()
            .map(|e| e.as_slice().iter().position(|&v| v == 1.0).unwrap())
            .collect()
    }

    #[test]
    fn zero_capacity_stays_empty() {
        let mut q = MemoryQueue::new(0, 8);
        q.enqueue_batch(&[basis(0), basis(1)]).unwrap();
        assert!(q.is_empty());
    }

    #[test]
    fn fifo_eviction() {
        let mut q = MemoryQueue::new(4, 8);
        q.enqueue_batch(&[basis(0), basis(1), basis(2)]).unwrap();
        q.enqueue_batch(&[basis(3), basis(4)]).unwrap();
        assert_eq!(ids(&q.snapshot()), vec![1, 2, 3, 4]);
    }

    #[test]
    fn oversized_batch_keeps_newest() {
        let mut q = MemoryQueue::new(3, 8);
        q.enqueue_batch(&(0..5).map(basis).collect::<Vec<_>>()).unwrap();
        assert_eq!(ids(&q.snapshot()), vec![2, 3, 4]);
    }

    #[test]
    fn snapshot_is_frozen_and_ordered() {
        let mut q = MemoryQueue::new(4, 8);
        assert!(q.snapshot().is_empty());
        q.enqueue_batch(&[basis(0), basis(1)]).unwrap();
        let snap = q.snapshot();
        q.enqueue_batch(&[basis(2), basis(3), basis(4)]).unwrap();
        assert_eq!(ids(&snap), vec![0, 1]);
        assert_eq!(ids(&q.snapshot()), vec![1, 2, 3, 4]);
    }

    #[test]
    fn rejects_wrong_dim_and_norm() {
        let mut q = MemoryQueue::new(4, 8);
        let short = Embedding::from_unit(vec![1.0, 0.0], 0.0).unwrap();
        assert!(matches!(q.enqueue_batch(&[short]), Err(Error::Shape(_))));
        let loose = Embedding::from_unit(
            {
                let mut v = vec![0.0; 8];
                v[0] = 1.0 + 1e-7;
                v
            },
            1e-6,
        )
        .unwrap();
        assert!(matches!(q.enqueue_batch(&[basis(0), loose]), Err(Error::Argument(_))));
        assert!(q.is_empty(), "failed batch must not be partially stored");
    }

    proptest! {
        #[test]
        fn matches_list_oracle(cap in 0usize..12, batches in prop::collection::vec(0usize..7, 0..10)) {
            let mut q = MemoryQueue::new(cap, 8);
            let mut oracle: Vec<usize> = Vec::new();
            let mut next = 0usize;
            let mut prev_len = 0usize;
            let mut reached = false;
            for n in batches {
                let ids_in: Vec<usize> = (next..next + n).collect();
                next += n;
                let batch: Vec<Embedding> = ids_in.iter().map(|&i| basis(i)).collect();
                q.enqueue_batch(&batch).unwrap();
                // list oracle: append one at a time, drop from the front
                for i in ids_in {
                    oracle.push(i % 8);
                    if oracle.len() > cap {
                        oracle.remove(0);
                    }
                }
                prop_assert_eq!(ids(&q.snapshot()), oracle.clone());
                prop_assert!(q.len() <= cap);
                if reached {
                    prop_assert_eq!(q.len(), cap);
                } else {
                    prop_assert!(q.len() >= prev_len);
                }
                reached |= q.len() == cap;
                prev_len = q.len();
            }
        }
    }
}
