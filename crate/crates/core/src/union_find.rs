/// Disjoint sets over `0..n` that keep an explicit member list per root,
/// so a caller can enumerate the cross pairs of a merge before doing it.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            members: (0..len).map(|i| vec![i]).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Members of the set whose root is `root`. Empty for non-roots.
    pub fn members(&self, root: usize) -> &[usize] {
        &self.members[root]
    }

    /// Joins two sets by their roots (union by size). Returns the new root.
    pub fn union_roots(&mut self, ra: usize, rb: usize) -> usize {
        if ra == rb {
            return ra;
        }
        let (big, small) = if self.members[ra].len() >= self.members[rb].len() {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let moved = std::mem::take(&mut self.members[small]);
        self.parent[small] = big;
        self.members[big].extend(moved);
        big
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        self.union_roots(ra, rb);
        ra != rb
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
