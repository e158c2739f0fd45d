//! Mixed-radix enumeration of total choice correspondences.
//!
//! Each menu with at least two alternatives is one digit; digit `d` selects
//! the `(d+1)`-th nonempty subset of the menu. The grand menu is the most
//! significant digit, so contiguous index ranges share its choice.

use std::str::FromStr;

use rand::Rng;

use crate::axioms::{fast, rationalizable_acyclic, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::menu::{all_menus, Menu};

/// Largest `n` for which the full index space fits the enumerator.
pub const MAX_FULL_N: usize = 4;

/// `x y z w v` for small `n`, then `a6 a7 …`.
pub fn default_labels(n: usize) -> Vec<String> {
    const NAMES: [&str; 5] = ["x", "y", "z", "w", "v"];
    (0..n)
        .map(|i| {
            NAMES
                .get(i)
                .map_or_else(|| format!("a{}", i + 1), |s| s.to_string())
        })
        .collect()
}

/// The `k`-th nonempty subset of `menu` (0-based), depositing the bits of
/// `k + 1` into the positions of `menu`.
fn nth_subset(menu: Menu, k: u32) -> Menu {
    let code = k + 1;
    let mut out = 0u32;
    for (j, a) in menu.members().enumerate() {
        if code >> j & 1 == 1 {
            out |= 1 << a.index();
        }
    }
    Menu::from_bits(out)
}

#[derive(Clone, Debug)]
pub struct Enumerator {
    labels: Vec<String>,
    /// Non-singleton menus, least significant digit first.
    menus: Vec<Menu>,
    radices: Vec<u32>,
}

impl Enumerator {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > crate::menu::MAX_ALTERNATIVES {
            return Err(Error::InvalidArgument(format!(
                "cannot enumerate over {n} alternatives"
            )));
        }
        let mut menus: Vec<Menu> = all_menus(n).filter(|m| m.len() >= 2).collect();
        menus.sort_by_key(|m| (m.len(), m.bits()));
        let radices = menus.iter().map(|m| (1u32 << m.len()) - 1).collect();
        Ok(Enumerator {
            labels,
            menus,
            radices,
        })
    }

    pub fn with_n(n: usize) -> Result<Self> {
        Self::new(default_labels(n))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `∏_A (2^|A| − 1)`, or `None` when it overflows `u64`.
    pub fn count(&self) -> Option<u64> {
        self.radices
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
    }

    /// Number of choices available on the grand menu (the shard count).
    pub fn shard_count(&self) -> u64 {
        self.radices.last().map_or(1, |&r| r as u64)
    }

    fn dataset_from_digits(&self, digits: impl Iterator<Item = u32>) -> ChoiceDataset {
        let n = self.n();
        let mut choices = vec![Menu::EMPTY; 1 << n];
        for i in 0..n {
            choices[1 << i] = Menu::from_bits(1 << i);
        }
        for (menu, d) in self.menus.iter().zip(digits) {
            choices[menu.bits() as usize] = nth_subset(*menu, d);
        }
        ChoiceDataset::from_raw(self.labels.clone(), choices)
    }

    /// Dataset number `index` in `0..count()`.
    pub fn decode(&self, mut index: u64) -> ChoiceDataset {
        let digits: Vec<u32> = self
            .radices
            .iter()
            .map(|&r| {
                let d = (index % r as u64) as u32;
                index /= r as u64;
                d
            })
            .collect();
        self.dataset_from_digits(digits.into_iter())
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, c: &ChoiceDataset) -> Result<u64> {
        c.require_total()?;
        let mut index = 0u64;
        for (menu, &r) in self.menus.iter().zip(&self.radices).rev() {
            let chosen = c.c(*menu);
            let mut code = 0u32;
            for (j, a) in menu.members().enumerate() {
                if chosen.contains(a) {
                    code |= 1 << j;
                }
            }
            index = index * r as u64 + (code - 1) as u64;
        }
        Ok(index)
    }

    /// Index range of shard `s` (datasets sharing the grand-menu choice).
    pub fn shard(&self, s: u64) -> std::ops::Range<u64> {
        let total = self.count().unwrap_or(0);
        let per = total / self.shard_count();
        s * per..(s + 1) * per
    }

    /// Every dataset exactly once; errors when `n` exceeds the full limit.
    pub fn iter(&self) -> Result<impl Iterator<Item = ChoiceDataset> + '_> {
        if self.n() > MAX_FULL_N {
            return Err(Error::EnumerationTooLarge(self.n()));
        }
        let total = self.count().ok_or(Error::EnumerationTooLarge(self.n()))?;
        Ok((0..total).map(move |i| self.decode(i)))
    }

    /// A uniformly random total dataset.
    pub fn sample(&self, rng: &mut impl Rng) -> ChoiceDataset {
        let digits: Vec<u32> = self.radices.iter().map(|&r| rng.gen_range(0..r)).collect();
        self.dataset_from_digits(digits.into_iter())
    }
}

/// Every total correspondence over `labels` (at most [`MAX_FULL_N`]).
pub fn enumerate_correspondences(labels: Vec<String>) -> Result<Vec<ChoiceDataset>> {
    let e = Enumerator::new(labels)?;
    let all = e.iter()?.collect();
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    AcyclicR,
    Alpha,
    PathIndependent,
    /// Threshold-Luce scope, operationalized as acyclic `R`.
    Gtlm,
    /// Maximization of some acyclic relation.
    Rationalizable,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::AcyclicR => "acyclic_R",
            Filter::Alpha => "alpha",
            Filter::PathIndependent => "path_independent",
            Filter::Gtlm => "gtlm",
            Filter::Rationalizable => "rationalizable",
        }
    }

    pub fn accepts(self, c: &ChoiceDataset) -> bool {
        match self {
            Filter::AcyclicR | Filter::Gtlm => relation_r(c).is_acyclic(),
            Filter::Alpha => fast::alpha(c),
            Filter::PathIndependent => fast::path_independence(c),
            Filter::Rationalizable => matches!(rationalizable_acyclic(c), Ok(Some(_))),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acyclic_R" | "acyclic_r" => Ok(Filter::AcyclicR),
            "alpha" => Ok(Filter::Alpha),
            "path_independent" => Ok(Filter::PathIndependent),
            "gtlm" => Ok(Filter::Gtlm),
            "rationalizable" => Ok(Filter::Rationalizable),
            _ => Err(Error::InvalidArgument(format!("unknown filter '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn counts_match_product() {
        let expected = [1u64, 3, 189, 26_254_935];
        for n in 1..=4 {
            assert_eq!(
                Enumerator::with_n(n).unwrap().count(),
                Some(expected[n - 1])
            );
        }
        assert_eq!(Enumerator::with_n(5).unwrap().count(), None);
    }

    #[test]
    fn n3_every_dataset_once() {
        let all = enumerate_correspondences(default_labels(3)).unwrap();
        assert_eq!(all.len(), 189);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 189);
        let e = Enumerator::with_n(3).unwrap();
        for (i, c) in all.iter().enumerate() {
            assert!(c.is_total());
            for m in all_menus(3) {
                assert!(!c.c(m).is_empty() && c.c(m).is_subset_of(m));
            }
            assert_eq!(e.encode(c).unwrap(), i as u64);
            // re-parse of the text form gives the same dataset
            assert_eq!(&ChoiceDataset::parse(&c.to_text()).unwrap(), c);
        }
    }

    #[test]
    fn shards_partition_by_grand_menu() {
        let e = Enumerator::with_n(3).unwrap();
        assert_eq!(e.shard_count(), 7);
        let mut seen = 0;
        for s in 0..7 {
            let r = e.shard(s);
            let grand = e.decode(r.start).c(Menu::full(3));
            for i in r {
                assert_eq!(e.decode(i).c(Menu::full(3)), grand);
                seen += 1;
            }
        }
        assert_eq!(seen, 189);
    }

    #[test]
    fn n5_needs_sampling() {
        let e = Enumerator::with_n(5).unwrap();
        assert!(matches!(e.iter(), Err(Error::EnumerationTooLarge(5))));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = e.sample(&mut rng);
        assert!(c.is_total());
        assert_eq!(c.labels(), &default_labels(5)[..]);
    }

    #[test]
    fn filters() {
        let all = enumerate_correspondences(default_labels(3)).unwrap();
        let pi = all
            .iter()
            .filter(|c| Filter::PathIndependent.accepts(c))
            .count();
        let alpha = all.iter().filter(|c| Filter::Alpha.accepts(c)).count();
        assert!(pi <= alpha && alpha < 189);
        assert!(all
            .iter()
            .all(|c| !Filter::PathIndependent.accepts(c) || Filter::Gtlm.accepts(c)));
    }
}
