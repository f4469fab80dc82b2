//! Ordered partitions of integer vectors and the matching lattice paths.

/// An ordered sequence of nonzero vectors summing to `target`. Scalar
/// compositions are the case of vectors of length 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPartition {
    pub parts: Vec<Vec<u32>>,
    pub target: Vec<u32>,
}

impl VectorPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Lazily yields every ordered partition of `target` exactly once: by number
/// of parts ascending, then lexicographically (parts compared as vectors).
/// A zero target yields nothing.
pub fn ordered_partitions(target: &[u32]) -> OrderedPartitions {
    let total: u32 = target.iter().sum();
    OrderedPartitions { target: target.to_vec(), total, m: 1, current: None }
}

#[derive(Debug, Clone)]
pub struct OrderedPartitions {
    target: Vec<u32>,
    total: u32,
    m: u32,
    current: Option<Vec<Vec<u32>>>,
}

fn norm(v: &[u32]) -> u32 {
    v.iter().sum()
}

fn minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Lexicographically least nonzero vector `<= rest` (a single 1 in the
/// last nonzero coordinate).
fn least_part(rest: &[u32]) -> Vec<u32> {
    let mut v = vec![0; rest.len()];
    let j = rest.iter().rposition(|&x| x > 0).expect("nonzero remainder");
    v[j] = 1;
    v
}

/// Next vector after `v` in lexicographic order within the box `[0, rest]`
/// whose norm stays at most `max_norm`.
fn next_part(v: &[u32], rest: &[u32], max_norm: u32) -> Option<Vec<u32>> {
    let mut v = v.to_vec();
    loop {
        let mut j = v.len();
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            if v[j] < rest[j] {
                v[j] += 1;
                break;
            }
            v[j] = 0;
        }
        if norm(&v) <= max_norm {
            return Some(v);
        }
    }
}

impl OrderedPartitions {
    /// Completes `parts` greedily with least parts; the last part is the remainder.
    fn complete(&self, mut parts: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        let mut rest = self.target.clone();
        for p in &parts {
            rest = minus(&rest, p);
        }
        while parts.len() + 1 < self.m as usize {
            let p = least_part(&rest);
            rest = minus(&rest, &p);
            parts.push(p);
        }
        parts.push(rest);
        parts
    }

    fn first(&self) -> Vec<Vec<u32>> {
        self.complete(Vec::new())
    }

    fn successor(&self, cur: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
        let m = cur.len();
        let mut before = vec![self.target.clone()];
        for p in cur {
            let r = minus(before.last().expect("nonempty"), p);
            before.push(r);
        }
        for pos in (0..m.saturating_sub(1)).rev() {
            let rest = &before[pos];
            let still_needed = (m - pos - 1) as u32;
            if let Some(v) = next_part(&cur[pos], rest, norm(rest) - still_needed) {
                let mut parts = cur[..pos].to_vec();
                parts.push(v);
                return Some(self.complete(parts));
            }
        }
        None
    }
}

impl Iterator for OrderedPartitions {
    type Item = VectorPartition;

    fn next(&mut self) -> Option<VectorPartition> {
        if self.m > self.total {
            return None;
        }
        let next = match &self.current {
            None => Some(self.first()),
            Some(cur) => self.successor(cur),
        };
        match next {
            Some(parts) => {
                self.current = Some(parts.clone());
                Some(VectorPartition { parts, target: self.target.clone() })
            }
            None => {
                self.m += 1;
                self.current = None;
                self.next()
            }
        }
    }
}

/// Lattice path `0 = s(0), s(1), .., s(m) = target` with nonzero steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub positions: Vec<Vec<u32>>,
}

impl LatticePath {
    /// The path whose velocities are the parts of `p`.
    pub fn from_partition(p: &VectorPartition) -> Self {
        let mut positions = vec![vec![0; p.target.len()]];
        for part in &p.parts {
            let last = positions.last().expect("nonempty");
            let next: Vec<u32> = last.iter().zip(part).map(|(a, b)| a + b).collect();
            positions.push(next);
        }
        LatticePath { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn velocities(&self) -> Vec<Vec<u32>> {
        self.positions.windows(2).map(|w| minus(&w[1], &w[0])).collect()
    }

    pub fn to_partition(&self) -> VectorPartition {
        VectorPartition {
            parts: self.velocities(),
            target: self.positions.last().expect("nonempty").clone(),
        }
    }
}

/// Lattice paths to `target`, in the order of [`ordered_partitions`].
pub fn lattice_paths(target: &[u32]) -> impl Iterator<Item = LatticePath> {
    ordered_partitions(target).map(|p| LatticePath::from_partition(&p))
}
