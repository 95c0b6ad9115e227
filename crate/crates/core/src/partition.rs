//! Union-find over `0..n` whose class representative is always the least member.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    /// The partition with a single block (empty if `n == 0`).
    pub fn full(n: usize) -> Self {
        let mut p = Self::discrete(n);
        for i in 1..n {
            p.union(0, i);
        }
        p
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = Self::discrete(n);
        for (a, b) in pairs {
            p.union(a, b);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the blocks of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        // keep chains short
        let mut x = a;
        while self.parent[x] != x {
            let next = self.parent[x];
            self.parent[x] = lo;
            x = next;
        }
        let mut x = b;
        while self.parent[x] != x {
            let next = self.parent[x];
            self.parent[x] = lo;
            x = next;
        }
        true
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|i| self.find(i) == i)
    }

    pub fn block_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.find(i) == i).count()
    }

    /// Blocks as sorted member lists, ordered by representative.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let r = self.find(i);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_member_represents() {
        let mut p = Partition::discrete(5);
        assert!(p.union(4, 2));
        assert!(p.union(3, 4));
        assert!(!p.union(2, 3));
        assert_eq!(p.find(4), 2);
        assert_eq!(p.find(3), 2);
        assert_eq!(p.blocks(), vec![vec![0], vec![1], vec![2, 3, 4]]);
        assert_eq!(p.block_count(), 3);
        assert!(!p.is_discrete());
    }

    #[test]
    fn full_and_empty() {
        assert_eq!(Partition::full(3).block_count(), 1);
        assert_eq!(Partition::full(0).block_count(), 0);
        assert!(Partition::discrete(3).is_discrete());
    }
}
