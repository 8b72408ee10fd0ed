//! Greedy information-gain elicitation tree.
//!
//! A split on feature `f` is scored by `Σ_g I(X_f; X_g)` over all features `g` (including `f`
//! itself), estimated on the users reaching the node.

use serde::{Deserialize, Serialize};

use super::data::BinaryDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeNode {
    pub depth: usize,
    /// Training users reaching this node.
    pub users: Vec<usize>,
    pub split: Option<usize>,
    /// Children for answers 0 and 1.
    pub children: Option<[usize; 2]>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElicitationTree {
    n: usize,
    nodes: Vec<TreeNode>,
}

impl ElicitationTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Split features in breadth-first order without repeats, followed by never-split features
    /// in index order.
    pub fn breadth_first_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let node = &self.nodes[id];
            if let Some(f) = node.split {
                if !order.contains(&f) {
                    order.push(f);
                }
            }
            if let Some(children) = node.children {
                queue.extend(children);
            }
        }
        order.extend((0..self.n).filter(|f| !order.contains(f)).collect::<Vec<_>>());
        order
    }
}

/// How the `k` queried features are chosen for a user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryOrder {
    /// Walk the tree: ask the current node's split feature, descend on the answer.
    #[default]
    Adaptive,
    /// One global order taken from [`ElicitationTree::breadth_first_order`].
    BreadthFirst,
}

impl std::str::FromStr for QueryOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive" => Ok(Self::Adaptive),
            "breadth-first" => Ok(Self::BreadthFirst),
            other => Err(Error::InvalidParameter(format!("unknown query order `{other}`"))),
        }
    }
}

fn entropy2(counts: &[f64], total: f64) -> f64 {
    -counts.iter().filter(|&&c| c > 0.0).map(|&c| c / total * (c / total).log2()).sum::<f64>()
}

/// `Σ_g I(X_f; X_g)` in bits for every feature `f`, on the given users.
pub fn multi_output_gains(data: &BinaryDataset, users: &[usize]) -> Vec<f64> {
    let n = data.n();
    let total = users.len() as f64;
    if users.is_empty() {
        return vec![0.0; n];
    }
    let mut ones = vec![0usize; n];
    let mut both = vec![vec![0usize; n]; n];
    for &u in users {
        let row = data.rows()[u];
        for f in 0..n {
            if row >> f & 1 == 1 {
                ones[f] += 1;
                let co = &mut both[f];
                for (g, c) in co.iter_mut().enumerate() {
                    *c += (row >> g & 1) as usize;
                }
            }
        }
    }
    (0..n)
        .map(|f| {
            (0..n)
                .map(|g| {
                    let n11 = both[f][g] as f64;
                    let n10 = ones[f] as f64 - n11;
                    let n01 = ones[g] as f64 - n11;
                    let n00 = total - n11 - n10 - n01;
                    let hf = entropy2(&[ones[f] as f64, total - ones[f] as f64], total);
                    let hg = entropy2(&[ones[g] as f64, total - ones[g] as f64], total);
                    let joint = entropy2(&[n00, n01, n10, n11], total);
                    (hf + hg - joint).max(0.0)
                })
                .sum()
        })
        .collect()
}

/// Builds the tree top-down. Splitting stops at `max_depth` or when the node's users agree on
/// every feature; ties between features go to the lowest index.
pub fn build_tree(data: &BinaryDataset, max_depth: usize) -> Result<ElicitationTree> {
    if data.m() == 0 {
        return Err(Error::EmptyDataset);
    }
    if max_depth > data.n() {
        return Err(Error::InvalidParameter(format!("max_depth = {max_depth} exceeds n = {}", data.n())));
    }
    let mut nodes = vec![TreeNode { depth: 0, users: (0..data.m()).collect(), split: None, children: None }];
    let mut used_on_path: Vec<u64> = vec![0];
    let mut next = 0;
    while next < nodes.len() {
        let id = next;
        next += 1;
        let node = &nodes[id];
        if node.depth >= max_depth || node.users.is_empty() {
            continue;
        }
        let first = data.rows()[node.users[0]];
        if node.users.iter().all(|&u| data.rows()[u] == first) {
            continue;
        }
        let used = used_on_path[id];
        let gains = multi_output_gains(data, &node.users);
        let Some(feature) = (0..data.n())
            .filter(|&f| used >> f & 1 == 0)
            .fold(None, |best: Option<usize>, f| match best {
                Some(b) if gains[f] <= gains[b] => Some(b),
                _ => Some(f),
            })
        else {
            continue;
        };
        let (ones, zeros): (Vec<usize>, Vec<usize>) = node.users.iter().partition(|&&u| data.bit(u, feature));
        let depth = node.depth + 1;
        let base = nodes.len();
        nodes[id].split = Some(feature);
        nodes[id].children = Some([base, base + 1]);
        nodes.push(TreeNode { depth, users: zeros, split: None, children: None });
        nodes.push(TreeNode { depth, users: ones, split: None, children: None });
        used_on_path.push(used | 1 << feature);
        used_on_path.push(used | 1 << feature);
    }
    Ok(ElicitationTree { n: data.n(), nodes })
}

/// Queried `(feature, answer)` pairs, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elicitation {
    pub pairs: Vec<(usize, bool)>,
    /// The user's path ended before `k` queries.
    pub shortfall: bool,
}

/// Walks the tree for a user, answering each split with the user's true bit.
pub fn elicit(tree: &ElicitationTree, user_bits: &[bool], k: usize) -> Result<Elicitation> {
    if user_bits.len() != tree.n {
        return Err(Error::LengthMismatch { expected: tree.n, got: user_bits.len() });
    }
    let mut pairs = Vec::with_capacity(k);
    let mut id = 0;
    while pairs.len() < k {
        let node = &tree.nodes[id];
        let (Some(feature), Some(children)) = (node.split, node.children) else {
            return Ok(Elicitation { pairs, shortfall: true });
        };
        let answer = user_bits[feature];
        pairs.push((feature, answer));
        id = children[answer as usize];
    }
    Ok(Elicitation { pairs, shortfall: false })
}
