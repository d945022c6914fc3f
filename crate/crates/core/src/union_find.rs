/// Disjoint sets with union by size and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grandparent = self.parent[self.parent[x] as usize];
            self.parent[x] = grandparent;
            x = grandparent as usize;
        }
        x
    }

    /// Merges the sets holding `a` and `b`, returning the size of the merged set.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return self.size[ra] as usize;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.size[ra] as usize
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_tracks_sizes() {
        let mut ds = DisjointSets::new(6);
        assert_eq!(ds.union(0, 1), 2);
        assert_eq!(ds.union(2, 3), 2);
        assert_eq!(ds.union(1, 3), 4);
        assert_eq!(ds.union(0, 2), 4);
        assert_eq!(ds.set_size(5), 1);
        assert_eq!(ds.find(3), ds.find(0));
        assert_ne!(ds.find(4), ds.find(0));
    }
}
