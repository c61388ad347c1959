use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

/// Rooted forest over the vertex set given by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
}

impl EliminationForest {
    /// Rejects out-of-range parents and cycles.
    pub fn new(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let n = parent.len();
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::VertexOutOfRange { vertex: p, n });
                }
                if p == v {
                    return Err(Error::InvalidForest(format!("vertex {v} is its own parent")));
                }
            }
        }
        let mut depth = vec![0usize; n];
        let mut path = Vec::new();
        for s in 0..n {
            let mut v = s;
            while depth[v] == 0 {
                path.push(v);
                if path.len() > n {
                    return Err(Error::InvalidForest(format!("parent pointers form a cycle through {v}")));
                }
                match parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            let mut d = depth[v];
            while let Some(w) = path.pop() {
                d += 1;
                depth[w] = d;
            }
        }
        Ok(EliminationForest { parent, depth })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    /// Depth of `v`, roots having depth 1.
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    /// Largest number of vertices on a root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn roots(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn children(&self) -> Vec<Vec<Vertex>> {
        let mut ch = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        ch
    }

    /// Preorder entry times and exit bounds: `w` lies in the subtree of `a`
    /// iff `tin[a] <= tin[w] < tout[a]`.
    pub fn euler_intervals(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let children = self.children();
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        let mut stack: Vec<(Vertex, usize)> = Vec::new();
        for r in self.roots() {
            stack.push((r, 0));
            tin[r] = clock;
            clock += 1;
            while let Some(top) = stack.last_mut() {
                let (v, i) = *top;
                if i < children[v].len() {
                    top.1 += 1;
                    let c = children[v][i];
                    tin[c] = clock;
                    clock += 1;
                    stack.push((c, 0));
                } else {
                    tout[v] = clock;
                    stack.pop();
                }
            }
        }
        (tin, tout)
    }

    pub fn is_ancestor(&self, a: Vertex, mut v: Vertex) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Edges of `g` whose endpoints are not in an ancestor-descendant relation.
    pub fn validate(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        if g.n() != self.n() {
            return vec![(usize::MAX, usize::MAX)];
        }
        let (tin, tout) = self.euler_intervals();
        let anc = |a: Vertex, v: Vertex| tin[a] <= tin[v] && tin[v] < tout[a];
        g.edges()
            .into_iter()
            .filter(|&(u, v, _)| !anc(u, v) && !anc(v, u))
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Forest on `subset` (given as a membership mask) where each member's
    /// parent is its nearest proper ancestor inside the subset. Members keep
    /// their IDs; non-members become isolated roots.
    pub fn restrict(&self, member: &[bool]) -> EliminationForest {
        let parent = (0..self.n())
            .map(|v| {
                if !member[v] {
                    return None;
                }
                let mut p = self.parent[v];
                while let Some(x) = p {
                    if member[x] {
                        break;
                    }
                    p = self.parent[x];
                }
                p
            })
            .collect();
        EliminationForest::new(parent).expect("restriction of a forest is a forest")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depths_and_height() {
        let f = EliminationForest::new(vec![Some(1), None, Some(1), Some(2)]).unwrap();
        assert_eq!((0..4).map(|v| f.depth(v)).collect::<Vec<_>>(), vec![2, 1, 2, 3]);
        assert_eq!(f.height(), 3);
        assert!(f.is_ancestor(1, 3));
        assert!(!f.is_ancestor(0, 3));
        let (tin, tout) = f.euler_intervals();
        assert!(tin[1] <= tin[3] && tin[3] < tout[1]);
        assert!(!(tin[0] <= tin[3] && tin[3] < tout[0]));
    }

    #[test]
    fn rejects_cycles() {
        assert!(EliminationForest::new(vec![Some(1), Some(0)]).is_err());
        assert!(EliminationForest::new(vec![Some(0)]).is_err());
        assert!(EliminationForest::new(vec![Some(5)]).is_err());
        assert!(EliminationForest::new(vec![None, Some(2), Some(3), Some(1)]).is_err());
    }

    #[test]
    fn validation_and_restriction() {
        let g = crate::graph::gen_path(3).unwrap();
        let good = EliminationForest::new(vec![Some(1), None, Some(1)]).unwrap();
        assert!(good.validate(&g).is_empty());
        let bad = EliminationForest::new(vec![None, Some(0), None]).unwrap();
        assert_eq!(bad.validate(&g), vec![(1, 2)]);
        let chain = EliminationForest::new(vec![None, Some(0), Some(1)]).unwrap();
        let r = chain.restrict(&[true, false, true]);
        assert_eq!(r.parent(2), Some(0));
        assert_eq!(r.parent(1), None);
    }
}
