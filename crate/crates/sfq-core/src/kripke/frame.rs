use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::nodeset::{NodeSet, MAX_NODES};

/// A finite rooted tree of nodes, indexed `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    parent: Vec<Option<usize>>,
    root: usize,
    children: Vec<Vec<usize>>,
    up: Vec<NodeSet>,
    down: Vec<NodeSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameError {
    Empty,
    TooManyNodes(usize),
    DuplicateNode(String),
    UnknownParent { node: String, parent: String },
    NoRoot,
    MultipleRoots(Vec<String>),
    Cycle(String),
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::Empty => f.write_str("the frame has no nodes"),
            FrameError::TooManyNodes(n) => write!(f, "{n} nodes exceed the limit of {MAX_NODES}"),
            FrameError::DuplicateNode(k) => write!(f, "node `{k}` declared twice"),
            FrameError::UnknownParent { node, parent } => write!(f, "node `{node}` has unknown parent `{parent}`"),
            FrameError::NoRoot => f.write_str("no node without a parent"),
            FrameError::MultipleRoots(r) => write!(f, "several roots: {}", r.join(", ")),
            FrameError::Cycle(k) => write!(f, "node `{k}` is not below the root"),
        }
    }
}

impl Frame {
    /// Builds a frame from `(name, parent name)` pairs.
    pub fn from_named(nodes: &[(String, Option<String>)]) -> Result<Frame, FrameError> {
        let mut index = BTreeMap::new();
        for (i, (name, _)) in nodes.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(FrameError::DuplicateNode(name.clone()));
            }
        }
        let mut parent = Vec::with_capacity(nodes.len());
        for (name, p) in nodes {
            match p {
                None => parent.push(None),
                Some(p) => match index.get(p) {
                    Some(&j) => parent.push(Some(j)),
                    None => return Err(FrameError::UnknownParent { node: name.clone(), parent: p.clone() }),
                },
            }
        }
        Frame::from_parents(nodes.iter().map(|(n, _)| n.clone()).collect(), parent)
    }

    /// Builds a frame from a parent array.
    pub fn from_parents(names: Vec<String>, parent: Vec<Option<usize>>) -> Result<Frame, FrameError> {
        let n = parent.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        if n > MAX_NODES {
            return Err(FrameError::TooManyNodes(n));
        }
        assert_eq!(names.len(), n, "one name per node");
        let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        let root = match roots.as_slice() {
            [] => return Err(FrameError::NoRoot),
            [r] => *r,
            _ => return Err(FrameError::MultipleRoots(roots.iter().map(|&i| names[i].clone()).collect())),
        };
        let mut down = alloc::vec![NodeSet::EMPTY; n];
        for k in 0..n {
            let mut cur = Some(k);
            let mut steps = 0;
            while let Some(c) = cur {
                down[k].insert(c);
                cur = parent[c];
                steps += 1;
                if steps > n {
                    return Err(FrameError::Cycle(names[k].clone()));
                }
            }
        }
        let mut up = alloc::vec![NodeSet::EMPTY; n];
        let mut children = alloc::vec![Vec::new(); n];
        for k in 0..n {
            for j in down[k].iter() {
                up[j].insert(k);
            }
            if let Some(p) = parent[k] {
                children[p].push(k);
            }
        }
        Ok(Frame { names, parent, root, children, up, down })
    }

    /// Nodes named `0, 1, ...` from a parent array.
    pub fn from_parent_indices(parent: &[Option<usize>]) -> Result<Frame, FrameError> {
        let names = (0..parent.len()).map(|i| alloc::format!("{i}")).collect();
        Frame::from_parents(names, parent.to_vec())
    }

    /// The two-node frame `r < k`.
    pub fn two_node() -> Frame {
        Frame::from_parents(alloc::vec!["r".into(), "k".into()], alloc::vec![None, Some(0)]).expect("valid frame")
    }

    /// A linear frame with `n` nodes named `0..n`.
    pub fn chain(n: usize) -> Frame {
        let parent: Vec<Option<usize>> = (0..n).map(|i| i.checked_sub(1)).collect();
        Frame::from_parent_indices(&parent).expect("valid chain")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parent(&self, k: usize) -> Option<usize> {
        self.parent[k]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, k: usize) -> &[usize] {
        &self.children[k]
    }

    /// `{k' | k <= k'}`.
    pub fn up(&self, k: usize) -> NodeSet {
        self.up[k]
    }

    /// `{k' | k' <= k}`.
    pub fn down(&self, k: usize) -> NodeSet {
        self.down[k]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn leaves(&self) -> NodeSet {
        (0..self.len()).filter(|&k| self.children[k].is_empty()).collect()
    }

    pub fn is_linear(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 1)
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        (0..self.len()).map(|k| self.down[k].len()).max().unwrap_or(0)
    }

    /// `{k | every k' >= k lies in s}`.
    pub fn boxed(&self, s: NodeSet) -> NodeSet {
        (0..self.len()).filter(|&k| self.up[k].is_subset(s)).collect()
    }

    /// `{k | some k' >= k lies in s}`.
    pub fn reach(&self, s: NodeSet) -> NodeSet {
        let mut out = NodeSet::EMPTY;
        for k in s.iter() {
            out = out.union(self.down[k]);
        }
        out
    }

    pub fn is_up_closed(&self, s: NodeSet) -> bool {
        s.iter().all(|k| self.up[k].is_subset(s))
    }

    /// Whether every node has a node of `s` above it.
    pub fn is_cofinal(&self, s: NodeSet) -> bool {
        self.reach(s) == self.all()
    }

    /// Nodes in breadth-first order from the root.
    pub fn bfs(&self) -> Vec<usize> {
        let mut out = alloc::vec![self.root];
        let mut i = 0;
        while i < out.len() {
            let k = out[i];
            out.extend_from_slice(&self.children[k]);
            i += 1;
        }
        out
    }

    /// The subframe on `up(k)`, with the node map old index to new index.
    pub fn generated(&self, k: usize) -> (Frame, Vec<Option<usize>>) {
        let keep: Vec<usize> = self.bfs().into_iter().filter(|&j| self.leq(k, j)).collect();
        let mut map = alloc::vec![None; self.len()];
        for (i, &j) in keep.iter().enumerate() {
            map[j] = Some(i);
        }
        let names = keep.iter().map(|&j| self.names[j].clone()).collect();
        let parent = keep.iter().map(|&j| if j == k { None } else { self.parent[j].and_then(|p| map[p]) }).collect();
        (Frame::from_parents(names, parent).expect("generated subframe is a tree"), map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_helpers() {
        let f = Frame::from_parent_indices(&[None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(f.root(), 0);
        assert_eq!(f.up(1), [1, 3].into_iter().collect());
        assert_eq!(f.leaves(), [2, 3].into_iter().collect());
        assert!(!f.is_linear());
        assert_eq!(f.height(), 3);
        let s: NodeSet = [3].into_iter().collect();
        assert_eq!(f.reach(s), [0, 1, 3].into_iter().collect());
        assert_eq!(f.boxed(f.reach(s)), [1, 3].into_iter().collect());
        assert!(!f.is_cofinal(s));
        let (g, map) = f.generated(1);
        assert_eq!(g.len(), 2);
        assert_eq!(map[3], Some(1));
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(Frame::from_parent_indices(&[]), Err(FrameError::Empty));
        assert!(matches!(Frame::from_parent_indices(&[None, None]), Err(FrameError::MultipleRoots(_))));
        assert!(matches!(Frame::from_parent_indices(&[None, Some(2), Some(1)]), Err(FrameError::Cycle(_))));
        assert!(matches!(Frame::from_parent_indices(&[Some(1), Some(0)]), Err(FrameError::NoRoot)));
    }
}
