//! Rooted metric trees with the meet operation: the product of two points is
//! the far end of the common part of their paths from the root.

use crate::error::{Error, Result};
use crate::scalar::Rat;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedMetricTree {
    /// `parent[v]` is `None` only for the root.
    pub parent: Vec<Option<usize>>,
    /// Length of the edge from `v` up to its parent; zero for the root.
    pub length: Vec<Rat>,
    pub root: usize,
}

/// Point on the edge above `edge` (named by its lower node), at distance
/// `offset` from the parent end. `offset == length[edge]` is the node itself;
/// the root is `(root, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TreePoint {
    pub edge: usize,
    pub offset: Rat,
}

impl RootedMetricTree {
    pub fn new(parent: Vec<Option<usize>>, length: Vec<Rat>) -> Result<Self> {
        let n = parent.len();
        if n == 0 || length.len() != n {
            return Err(Error::InvalidArgument(
                "tree needs nodes and one length per node".into(),
            ));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "expected one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        for v in 0..n {
            if let Some(p) = parent[v] {
                if p >= n {
                    return Err(Error::InvalidArgument(format!(
                        "parent of {v} out of range"
                    )));
                }
                if !length[v].is_positive() {
                    return Err(Error::InvalidArgument(format!(
                        "edge above {v} has nonpositive length"
                    )));
                }
            }
            // walking up must reach the root within n steps
            let mut x = v;
            let mut steps = 0;
            while let Some(p) = parent[x] {
                x = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidArgument(
                        "parent links contain a cycle".into(),
                    ));
                }
            }
        }
        let mut length = length;
        length[root] = Rat::zero();
        Ok(RootedMetricTree {
            parent,
            length,
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn node(&self, v: usize) -> TreePoint {
        TreePoint {
            edge: v,
            offset: self.length[v].clone(),
        }
    }

    pub fn check(&self, p: &TreePoint) -> Result<()> {
        let ok = p.edge < self.len()
            && if p.edge == self.root {
                p.offset.is_zero()
            } else {
                p.offset.is_positive() && p.offset <= self.length[p.edge]
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "point ({}, {}) is not on the tree",
                p.edge, p.offset
            )))
        }
    }

    /// Nodes from `v` up to the root, inclusive.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut x = v;
        while let Some(p) = self.parent[x] {
            out.push(p);
            x = p;
        }
        out
    }

    /// Distance from the root.
    pub fn depth(&self, p: &TreePoint) -> Rat {
        let above: Rat = self
            .ancestors(p.edge)
            .iter()
            .skip(1)
            .map(|&v| self.length[v].clone())
            .sum();
        above + &p.offset
    }
}

/// Far end of the common part of the root paths to `p` and `q`.
pub fn tree_meet(t: &RootedMetricTree, p: &TreePoint, q: &TreePoint) -> Result<TreePoint> {
    t.check(p)?;
    t.check(q)?;
    if p.edge == q.edge {
        return Ok(if p.offset <= q.offset {
            p.clone()
        } else {
            q.clone()
        });
    }
    let ap = t.ancestors(p.edge);
    let aq = t.ancestors(q.edge);
    if ap.contains(&q.edge) {
        // the edge of q lies on the way to p, so the path to q is inside the path to p
        return Ok(q.clone());
    }
    if aq.contains(&p.edge) {
        return Ok(p.clone());
    }
    let w = *ap
        .iter()
        .find(|v| aq.contains(v))
        .expect("paths share the root");
    Ok(t.node(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    #[test]
    fn path_and_star() {
        let path =
            RootedMetricTree::new(vec![None, Some(0), Some(1)], vec![rat(0), rat(1), rat(1)])
                .unwrap();
        assert_eq!(
            tree_meet(&path, &path.node(1), &path.node(2)).unwrap(),
            path.node(1)
        );
        let mid = TreePoint {
            edge: 2,
            offset: frac(1, 2),
        };
        assert_eq!(tree_meet(&path, &mid, &mid).unwrap(), mid);
        let star = RootedMetricTree::new(
            vec![None, Some(0), Some(1), Some(1)],
            vec![rat(0), rat(2), rat(1), rat(3)],
        )
        .unwrap();
        assert_eq!(
            tree_meet(&star, &star.node(2), &star.node(3)).unwrap(),
            star.node(1)
        );
        assert_eq!(star.depth(&star.node(3)), rat(5));
    }

    #[test]
    fn bad_trees_and_points() {
        assert!(RootedMetricTree::new(vec![Some(1), Some(0)], vec![rat(1), rat(1)]).is_err());
        assert!(RootedMetricTree::new(vec![None, Some(0)], vec![rat(0), rat(0)]).is_err());
        let t = RootedMetricTree::new(vec![None, Some(0)], vec![rat(0), rat(1)]).unwrap();
        assert!(tree_meet(
            &t,
            &TreePoint {
                edge: 1,
                offset: rat(2)
            },
            &t.node(0)
        )
        .is_err());
    }
}
