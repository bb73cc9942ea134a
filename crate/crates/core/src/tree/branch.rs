use std::fmt;

use serde::Serialize;

use super::schema::{SchemaSeq, TreeSchema};

/// An eventually periodic branch `prefix ⌢ cycle ⌢ cycle ⌢ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Branch {
    pub prefix: Vec<u64>,
    pub cycle: Vec<u64>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Branch {
    pub fn constant(c: u64) -> Self {
        Branch {
            prefix: Vec::new(),
            cycle: vec![c],
        }
    }

    pub fn zeros() -> Self {
        Self::constant(0)
    }

    pub fn at(&self, i: usize) -> u64 {
        match self.prefix.get(i) {
            Some(&x) => x,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// `⟨h⟩ ⌢ self`.
    pub fn cons(&self, h: u64) -> Branch {
        let mut prefix = vec![h];
        prefix.extend_from_slice(&self.prefix);
        Branch {
            prefix,
            cycle: self.cycle.clone(),
        }
    }

    /// `0ⁿ ⌢ ⟨1⟩ ⌢ self`, the branch shape of spine copy n.
    pub fn under_spine(&self, n: usize) -> Branch {
        let mut prefix = vec![0; n];
        prefix.push(1);
        prefix.extend_from_slice(&self.prefix);
        Branch {
            prefix,
            cycle: self.cycle.clone(),
        }
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &Branch) -> Branch {
        let len = self.prefix.len().max(other.prefix.len());
        let (a, b) = (self.cycle.len(), other.cycle.len());
        let period = a / gcd(a, b) * b;
        let pick = |i: usize| self.at(i).max(other.at(i));
        Branch {
            prefix: (0..len).map(pick).collect(),
            cycle: (len..len + period).map(pick).collect(),
        }
        .compact()
    }

    /// Largest value the branch ever takes.
    pub fn sup(&self) -> u64 {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn dominates(&self, u: &[u64]) -> bool {
        u.iter().enumerate().all(|(i, &x)| x <= self.at(i))
    }

    fn compact(mut self) -> Branch {
        if self.cycle.iter().all(|&x| x == self.cycle[0]) {
            self.cycle.truncate(1);
        }
        while let Some(&last) = self.prefix.last() {
            if self.cycle.len() == 1 && last == self.cycle[0] {
                self.prefix.pop();
            } else {
                break;
            }
        }
        self
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if self.prefix.is_empty() {
            write!(f, "({})^w", join(&self.cycle))
        } else {
            write!(f, "{},({})^w", join(&self.prefix), join(&self.cycle))
        }
    }
}

/// A branch dominating every element of `t`, if one exists.
pub fn dominating_branch(t: &TreeSchema) -> Option<Branch> {
    match t {
        TreeSchema::Empty | TreeSchema::Eps | TreeSchema::Chain => Some(Branch::zeros()),
        TreeSchema::Full => None,
        TreeSchema::Rooted(x) => dominating_branch(x),
        TreeSchema::Fan(heads, tail) => {
            if !tail.is_empty() {
                return None;
            }
            let mut acc = Branch::zeros();
            for (i, x) in heads.iter().enumerate() {
                if !x.is_empty() {
                    acc = acc.max(&dominating_branch(x)?.cons(i as u64));
                }
            }
            Some(acc)
        }
        TreeSchema::Spine(heads, tail) => {
            let mut acc = Branch::zeros();
            for (n, x) in heads.iter().enumerate() {
                if !x.is_empty() {
                    acc = acc.max(&dominating_branch(x)?.under_spine(n));
                }
            }
            match tail {
                SchemaSeq::Const(x) if x.is_empty() => Some(acc),
                SchemaSeq::Const(x) => {
                    let b = dominating_branch(x)?;
                    let k = heads.len();
                    // position i ≥ k sees a 1 from copy i and b(j) from every
                    // earlier tail copy, for j < i-k
                    let settle = k + 1 + b.prefix.len() + b.cycle.len();
                    let mut running = 0;
                    let prefix = (0..settle)
                        .map(|i| {
                            if i < k {
                                return 0;
                            }
                            let v = running.max(1);
                            running = running.max(b.at(i - k));
                            v
                        })
                        .collect();
                    let tail_branch = Branch {
                        prefix,
                        cycle: vec![b.sup().max(1)],
                    };
                    Some(acc.max(&tail_branch))
                }
                SchemaSeq::Diag { .. } => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::classify::in_id;
    use TreeSchema::*;

    #[test]
    fn examples() {
        assert_eq!(dominating_branch(&Chain), Some(Branch::zeros()));
        let sp = TreeSchema::spine(vec![], SchemaSeq::constant(Chain));
        assert_eq!(dominating_branch(&sp), Some(Branch::constant(1)));
        assert_eq!(
            dominating_branch(&TreeSchema::fan(vec![], SchemaSeq::constant(Eps))),
            None
        );
    }

    #[test]
    fn max_aligns_cycles() {
        let a = Branch {
            prefix: vec![5],
            cycle: vec![0, 2],
        };
        let b = Branch {
            prefix: vec![],
            cycle: vec![1, 0, 0],
        };
        let m = a.max(&b);
        for i in 0..20 {
            assert_eq!(m.at(i), a.at(i).max(b.at(i)));
        }
    }

    #[test]
    fn spine_running_maximum() {
        let inner = TreeSchema::singleton(&[0, 4]);
        let sp = TreeSchema::spine(vec![Empty, Empty], SchemaSeq::constant(inner));
        let b = dominating_branch(&sp).unwrap();
        // copy n holds 0ⁿ1⌢<0,4> for n ≥ 2
        for n in 2..8usize {
            let mut u = vec![0; n];
            u.extend([1, 0, 4]);
            assert!(b.dominates(&u), "{b} vs {u:?}");
        }
        assert_eq!(b.at(0), 0);
    }

    #[test]
    fn agrees_with_in_id() {
        let samples = [
            Chain,
            Full,
            TreeSchema::spine(vec![Chain], SchemaSeq::constant(Eps)),
            TreeSchema::fan(vec![Chain, Eps], SchemaSeq::empty()),
            TreeSchema::rooted(TreeSchema::fan(vec![], SchemaSeq::constant(Chain))),
        ];
        for t in samples {
            assert_eq!(dominating_branch(&t).is_some(), in_id(&t), "{t}");
        }
    }
}
