/// Disjoint sets over `0..len` with union by rank and path halving.
#[derive(Debug, Clone)]
pub struct NodePartition {
    parent: Vec<u32>,
    rank: Vec<u8>,
    unions: usize,
}

impl NodePartition {
    pub fn new(len: usize) -> Self {
        NodePartition {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
            unions: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Find without path compression.
    pub fn find_const(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Merges the parts of `a` and `b`; returns false if they were already
    /// in the same part.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return false;
        }
        let (hi, lo) = if self.rank[a as usize] >= self.rank[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
        self.unions += 1;
        true
    }

    pub fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn part_count(&self) -> usize {
        self.parent.len() - self.unions
    }

    /// Maps every element to the least element of its part.
    pub fn canonical(&mut self) -> Vec<u32> {
        let n = self.len();
        let mut least = vec![u32::MAX; n];
        let mut out = vec![0; n];
        for x in 0..n as u32 {
            let r = self.find(x) as usize;
            if least[r] == u32::MAX {
                least[r] = x;
            }
            out[x as usize] = least[r];
        }
        out
    }
}
