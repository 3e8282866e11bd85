//! Update-vertex schedules.
//!
//! Only interior vertices are ever scheduled. The random schedule has a fixed
//! stream contract: the generator is ChaCha8 seeded with the given 64-bit
//! seed, one `next_u64` draw per step, mapped to an index into the ascending
//! interior list by the widening multiply `(x * len) >> 64`. The same seed
//! therefore yields the same vertex sequence on every platform.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Schedule {
    UniformRandom { seed: u64 },
    /// Cyclic sweeps over a fixed permutation of the interior; `None` means
    /// ascending vertex order.
    RoundRobin { order: Option<Vec<usize>> },
    /// A finite explicit sequence; the run stops when it is exhausted.
    Explicit { seq: Vec<usize> },
}

impl Schedule {
    pub fn uniform(seed: u64) -> Self {
        Schedule::UniformRandom { seed }
    }

    pub fn round_robin() -> Self {
        Schedule::RoundRobin { order: None }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Schedule::UniformRandom { seed } => Some(*seed),
            _ => None,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let interior = g.interior();
        if interior.is_empty() {
            return Err(Error::InvalidParameter(
                "graph has no interior vertices to schedule".into(),
            ));
        }
        let check = |v: usize| -> Result<()> {
            if v >= g.n() {
                Err(Error::VertexOutOfRange { v, n: g.n() })
            } else if g.is_boundary(v) {
                Err(Error::InvalidParameter(format!(
                    "scheduled vertex {v} is a boundary vertex"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            Schedule::UniformRandom { .. } => Ok(()),
            Schedule::RoundRobin { order: None } => Ok(()),
            Schedule::RoundRobin { order: Some(ord) } => {
                for &v in ord {
                    check(v)?;
                }
                let mut sorted = ord.clone();
                sorted.sort_unstable();
                if sorted != interior {
                    return Err(Error::InvalidParameter(
                        "round-robin order must be a permutation of the interior".into(),
                    ));
                }
                Ok(())
            }
            Schedule::Explicit { seq } => {
                if seq.is_empty() {
                    return Err(Error::InvalidParameter("explicit schedule is empty".into()));
                }
                for &v in seq {
                    check(v)?;
                }
                Ok(())
            }
        }
    }

    pub fn stream(&self, g: &Graph) -> Result<ScheduleStream> {
        self.validate(g)?;
        let state = match self {
            Schedule::UniformRandom { seed } => StreamState::Uniform {
                rng: ChaCha8Rng::seed_from_u64(*seed),
                interior: g.interior().to_vec(),
            },
            Schedule::RoundRobin { order } => StreamState::Cyclic {
                order: order.clone().unwrap_or_else(|| g.interior().to_vec()),
                pos: 0,
            },
            Schedule::Explicit { seq } => StreamState::Finite {
                seq: seq.clone(),
                pos: 0,
            },
        };
        Ok(ScheduleStream { state })
    }
}

pub struct ScheduleStream {
    state: StreamState,
}

enum StreamState {
    Uniform { rng: ChaCha8Rng, interior: Vec<usize> },
    Cyclic { order: Vec<usize>, pos: usize },
    Finite { seq: Vec<usize>, pos: usize },
}

impl Iterator for ScheduleStream {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match &mut self.state {
            StreamState::Uniform { rng, interior } => {
                let x = rng.next_u64();
                let idx = ((x as u128 * interior.len() as u128) >> 64) as usize;
                Some(interior[idx])
            }
            StreamState::Cyclic { order, pos } => {
                let v = order[*pos];
                *pos = (*pos + 1) % order.len();
                Some(v)
            }
            StreamState::Finite { seq, pos } => {
                let v = seq.get(*pos).copied();
                *pos += 1;
                v
            }
        }
    }
}

/// Times `T_1 < T_2 < ...` at which the schedule has visited every interior
/// vertex since the previous cover, within the first `horizon` steps.
pub fn cover_times(sched: &Schedule, g: &Graph, horizon: u64) -> Result<Vec<u64>> {
    let interior = g.interior();
    let mut stream = sched.stream(g)?;
    let mut marks = Vec::new();
    let mut seen = vec![false; g.n()];
    let mut remaining = interior.len();
    for t in 1..=horizon {
        let Some(v) = stream.next() else { break };
        if !seen[v] {
            seen[v] = true;
            remaining -= 1;
            if remaining == 0 {
                marks.push(t);
                seen.iter_mut().for_each(|s| *s = false);
                remaining = interior.len();
            }
        }
    }
    Ok(marks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn round_robin_covers_every_n_steps() {
        let g = generators::cycle(5).unwrap();
        let marks = cover_times(&Schedule::round_robin(), &g, 23).unwrap();
        assert_eq!(marks, vec![5, 10, 15, 20]);
    }

    #[test]
    fn explicit_cover_marks() {
        // interior {0, 1}: the sequence 0,1,0,1 covers at t = 2 and t = 4
        let g = crate::graph::Graph::new(2, &[(0, 1)]).unwrap();
        let sched = Schedule::Explicit { seq: vec![0, 1, 0, 1] };
        assert_eq!(cover_times(&sched, &g, 10).unwrap(), vec![2, 4]);

        let g = generators::cycle(4).unwrap();
        // a two-vertex sequence never covers the four-vertex interior
        let sched = Schedule::Explicit { seq: vec![0, 1, 0, 1] };
        assert!(cover_times(&sched, &g, 10).unwrap().is_empty());
    }

    #[test]
    fn same_seed_same_sequence() {
        let g = generators::cycle(9).unwrap();
        let a: Vec<usize> = Schedule::uniform(42).stream(&g).unwrap().take(50).collect();
        let b: Vec<usize> = Schedule::uniform(42).stream(&g).unwrap().take(50).collect();
        let c: Vec<usize> = Schedule::uniform(43).stream(&g).unwrap().take(50).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|&v| v < 9));
    }

    #[test]
    fn boundary_vertices_never_scheduled() {
        let g = generators::segment(4, true).unwrap();
        let seq: Vec<usize> = Schedule::uniform(7).stream(&g).unwrap().take(500).collect();
        assert!(seq.iter().all(|&v| !g.is_boundary(v)));

        let bad = Schedule::Explicit { seq: vec![0] };
        assert!(bad.validate(&g).is_err());

        let bad_order = Schedule::RoundRobin { order: Some(vec![1, 2, 3]) };
        assert!(bad_order.validate(&g).is_err());
    }

    #[test]
    fn uniform_cover_time_expectation() {
        // coupon collector: E[T_1] <= n (log n + 1)
        let g = generators::cycle(12).unwrap();
        let n = 12.0_f64;
        let mut total = 0.0;
        let reps = 400;
        for seed in 0..reps {
            let marks = cover_times(&Schedule::uniform(seed), &g, 10_000).unwrap();
            total += marks[0] as f64;
        }
        let mean = total / reps as f64;
        assert!(mean <= n * (n.ln() + 1.0) * 1.05, "mean cover time {mean}");
        assert!(mean >= n); // needs at least n draws
    }
}
