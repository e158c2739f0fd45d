//! Binary relations over alternatives, cycle detection and linear extensions.

use std::fmt;

use crate::error::{Error, Result};
use crate::menu::{Alternative, Menu};

/// A set of ordered pairs `(x, y)`, read "x is related to y".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    /// `succ[x]` holds every `y` with `x rel y`.
    succ: Vec<Menu>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            succ: vec![Menu::EMPTY; n],
        }
    }

    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (Alternative, Alternative)>,
    ) -> Self {
        let mut rel = Self::empty(n);
        for (x, y) in pairs {
            rel.insert(x, y);
        }
        rel
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn insert(&mut self, x: Alternative, y: Alternative) {
        self.succ[x.index()] = self.succ[x.index()].with(y);
    }

    pub fn insert_all(&mut self, x: Alternative, ys: Menu) {
        self.succ[x.index()] = self.succ[x.index()].union(ys);
    }

    pub fn contains(&self, x: Alternative, y: Alternative) -> bool {
        self.succ[x.index()].contains(y)
    }

    pub fn successors(&self, x: Alternative) -> Menu {
        self.succ[x.index()]
    }

    pub fn predecessors(&self, y: Alternative) -> Menu {
        Menu::from_alternatives(
            (0..self.n())
                .map(Alternative::new)
                .filter(|x| self.contains(*x, y)),
        )
    }

    pub fn pairs(&self) -> Vec<(Alternative, Alternative)> {
        (0..self.n())
            .map(Alternative::new)
            .flat_map(|x| self.succ[x.index()].members().map(move |y| (x, y)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.succ.iter().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(|m| m.is_empty())
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            succ: self
                .succ
                .iter()
                .zip(&other.succ)
                .map(|(a, b)| a.union(*b))
                .collect(),
        }
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n())
            .map(Alternative::new)
            .all(|x| !self.contains(x, x))
    }

    /// Alternatives of `menu` not related-to by any other member of `menu`.
    pub fn maximal_in(&self, menu: Menu) -> Menu {
        Menu::from_alternatives(
            menu.members()
                .filter(|y| !menu.members().any(|x| self.contains(x, *y))),
        )
    }

    /// A closed cycle `[a, b, .., a]` if one exists.
    pub fn find_cycle(&self) -> Option<Vec<Alternative>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.n();
        let mut mark = vec![Mark::New; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // iterative DFS: (node, remaining successors)
            let mut stack: Vec<(usize, Menu)> = vec![(root, self.succ[root])];
            mark[root] = Mark::Active;
            while let Some((node, rest)) = stack.last_mut() {
                let node = *node;
                match rest.first() {
                    None => {
                        mark[node] = Mark::Done;
                        stack.pop();
                    }
                    Some(next) => {
                        *rest = rest.without(next);
                        let j = next.index();
                        match mark[j] {
                            Mark::Active => {
                                let mut cycle = vec![Alternative::new(j)];
                                let mut cur = node;
                                while cur != j {
                                    cycle.push(Alternative::new(cur));
                                    cur = parent[cur];
                                }
                                cycle.push(Alternative::new(j));
                                cycle.reverse();
                                return Some(cycle);
                            }
                            Mark::New => {
                                mark[j] = Mark::Active;
                                parent[j] = node;
                                stack.push((j, self.succ[j]));
                            }
                            Mark::Done => {}
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    pub(crate) fn require_acyclic(&self, labels: &[String]) -> Result<()> {
        match self.find_cycle() {
            None => Ok(()),
            Some(cycle) => Err(Error::CyclicRelation {
                cycle: cycle.iter().map(|a| labels[a.index()].clone()).collect(),
            }),
        }
    }

    /// Lazily enumerates every linear extension, in lexicographic order of
    /// the ascending (worst-first) listing.
    pub fn linear_extensions(&self) -> Result<LinearExtensions<'_>> {
        if let Some(cycle) = self.find_cycle() {
            return Err(Error::CyclicRelation {
                cycle: cycle.iter().map(|a| a.0.to_string()).collect(),
            });
        }
        Ok(LinearExtensions::new(self))
    }

    /// The lexicographically smallest linear extension.
    pub fn first_linear_extension(&self) -> Result<LinearOrder> {
        Ok(self
            .linear_extensions()?
            .next()
            .expect("acyclic relations have an extension"))
    }

    pub fn count_linear_extensions(&self) -> Result<usize> {
        Ok(self.linear_extensions()?.count())
    }
}

/// A strict total order, listed from worst to best.
///
/// Position `i` (0-based) corresponds to `x_{i+1}`; `a` is above `b` iff
/// `position(a) > position(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    ascending: Vec<Alternative>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn from_ascending(ascending: Vec<Alternative>) -> Result<Self> {
        let n = ascending.len();
        let mut position = vec![usize::MAX; n];
        for (i, a) in ascending.iter().enumerate() {
            if a.index() >= n || position[a.index()] != usize::MAX {
                return Err(Error::InvalidArgument(
                    "linear order must list each alternative exactly once".into(),
                ));
            }
            position[a.index()] = i;
        }
        Ok(LinearOrder {
            ascending,
            position,
        })
    }

    /// Best first.
    pub fn from_descending(mut descending: Vec<Alternative>) -> Result<Self> {
        descending.reverse();
        Self::from_ascending(descending)
    }

    /// `x_0 < x_1 < ...` by index.
    pub fn identity(n: usize) -> Self {
        Self::from_ascending((0..n).map(Alternative::new).collect()).expect("identity")
    }

    pub fn len(&self) -> usize {
        self.ascending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ascending.is_empty()
    }

    pub fn ascending(&self) -> &[Alternative] {
        &self.ascending
    }

    pub fn descending(&self) -> Vec<Alternative> {
        self.ascending.iter().rev().copied().collect()
    }

    pub fn position(&self, a: Alternative) -> usize {
        self.position[a.index()]
    }

    /// `a` strictly above `b`.
    pub fn prefers(&self, a: Alternative, b: Alternative) -> bool {
        self.position(a) > self.position(b)
    }

    /// Weak upper contour set `{b : b ⪰ a}`.
    pub fn upper_set(&self, a: Alternative) -> Menu {
        Menu::from_alternatives(self.ascending[self.position(a)..].iter().copied())
    }

    pub fn extends(&self, rel: &Relation) -> bool {
        rel.pairs().into_iter().all(|(x, y)| self.prefers(x, y))
    }

    pub fn as_relation(&self) -> Relation {
        let mut rel = Relation::empty(self.len());
        for (i, a) in self.ascending.iter().enumerate() {
            rel.insert_all(
                *a,
                Menu::from_alternatives(self.ascending[..i].iter().copied()),
            );
        }
        rel
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.descending().iter().map(|a| a.0.to_string()).collect();
        write!(f, "{}", parts.join(" > "))
    }
}

/// Backtracking enumerator behind [`Relation::linear_extensions`].
pub struct LinearExtensions<'a> {
    rel: &'a Relation,
    seq: Vec<Alternative>,
    cursor: Vec<usize>,
    placed: Menu,
    started: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(rel: &'a Relation) -> Self {
        let n = rel.n();
        LinearExtensions {
            rel,
            seq: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            placed: Menu::EMPTY,
            started: false,
            done: false,
        }
    }

    fn pop(&mut self) {
        if let Some(a) = self.seq.pop() {
            self.placed = self.placed.without(a);
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = LinearOrder;

    fn next(&mut self) -> Option<LinearOrder> {
        if self.done {
            return None;
        }
        let n = self.rel.n();
        if self.started {
            if n == 0 {
                self.done = true;
                return None;
            }
            self.pop();
        }
        self.started = true;
        loop {
            let depth = self.seq.len();
            if depth == n {
                return Some(
                    LinearOrder::from_ascending(self.seq.clone()).expect("valid permutation"),
                );
            }
            // an alternative may be placed once everything it beats is below it
            let candidate = (self.cursor[depth]..n).map(Alternative::new).find(|a| {
                !self.placed.contains(*a) && self.rel.successors(*a).is_subset_of(self.placed)
            });
            match candidate {
                Some(a) => {
                    self.cursor[depth] = a.index() + 1;
                    self.cursor[depth + 1] = 0;
                    self.seq.push(a);
                    self.placed = self.placed.with(a);
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pop();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt(i: usize) -> Alternative {
        Alternative::new(i)
    }

    #[test]
    fn chain_is_acyclic() {
        let rel = Relation::from_pairs(3, [(alt(0), alt(1)), (alt(1), alt(2))]);
        assert!(rel.is_acyclic());
    }

    #[test]
    fn two_cycle_detected() {
        let rel = Relation::from_pairs(3, [(alt(1), alt(2)), (alt(2), alt(1))]);
        let cycle = rel.find_cycle().unwrap();
        assert_eq!(cycle, vec![alt(1), alt(2), alt(1)]);
    }

    #[test]
    fn empty_relation_is_acyclic() {
        assert!(Relation::empty(4).is_acyclic());
    }

    #[test]
    fn longer_cycle_is_closed() {
        let rel = Relation::from_pairs(4, [(alt(0), alt(1)), (alt(1), alt(3)), (alt(3), alt(0))]);
        let cycle = rel.find_cycle().unwrap();
        assert_eq!(cycle.first(), cycle.last());
        for w in cycle.windows(2) {
            assert!(rel.contains(w[0], w[1]));
        }
    }

    #[test]
    fn extensions_of_empty_relation() {
        assert_eq!(Relation::empty(3).count_linear_extensions().unwrap(), 6);
    }

    #[test]
    fn total_order_has_single_extension() {
        let order = LinearOrder::from_descending(vec![alt(2), alt(0), alt(1)]).unwrap();
        let exts: Vec<_> = order.as_relation().linear_extensions().unwrap().collect();
        assert_eq!(exts, vec![order]);
    }

    #[test]
    fn single_pair_has_three_extensions() {
        // oracle: filter all permutations of three elements
        let rel = Relation::from_pairs(3, [(alt(0), alt(1))]);
        let brute = permutations(3)
            .into_iter()
            .filter(|p| {
                let o = LinearOrder::from_ascending(p.clone()).unwrap();
                o.prefers(alt(0), alt(1))
            })
            .count();
        assert_eq!(brute, 3);
        assert_eq!(rel.count_linear_extensions().unwrap(), 3);
    }

    #[test]
    fn cyclic_input_rejected() {
        let rel = Relation::from_pairs(2, [(alt(0), alt(1)), (alt(1), alt(0))]);
        assert!(matches!(
            rel.linear_extensions(),
            Err(Error::CyclicRelation { .. })
        ));
    }

    #[test]
    fn first_extension_is_lexicographically_smallest() {
        let rel = Relation::from_pairs(3, [(alt(0), alt(2))]);
        let all: Vec<Vec<Alternative>> = rel
            .linear_extensions()
            .unwrap()
            .map(|o| o.ascending().to_vec())
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0], vec![alt(1), alt(2), alt(0)]);
    }

    fn permutations(n: usize) -> Vec<Vec<Alternative>> {
        fn go(rest: Vec<Alternative>, acc: &mut Vec<Alternative>, out: &mut Vec<Vec<Alternative>>) {
            if rest.is_empty() {
                out.push(acc.clone());
            }
            for i in 0..rest.len() {
                let mut r = rest.clone();
                let a = r.remove(i);
                acc.push(a);
                go(r, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go((0..n).map(alt).collect(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn extensions_match_permutation_filter() {
        let rel = Relation::from_pairs(4, [(alt(3), alt(0)), (alt(1), alt(2)), (alt(3), alt(2))]);
        let brute: Vec<Vec<Alternative>> = permutations(4)
            .into_iter()
            .filter(|p| {
                LinearOrder::from_ascending(p.clone())
                    .unwrap()
                    .extends(&rel)
            })
            .collect();
        let mut ours: Vec<Vec<Alternative>> = rel
            .linear_extensions()
            .unwrap()
            .map(|o| o.ascending().to_vec())
            .collect();
        ours.sort();
        let mut brute_sorted = brute;
        brute_sorted.sort();
        assert_eq!(ours, brute_sorted);
    }
}
