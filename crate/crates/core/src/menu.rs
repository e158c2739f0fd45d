//! Alternatives and menus over a ground set of at most 20 alternatives.

use std::fmt;

/// Largest supported ground set.
pub const MAX_ALTERNATIVES: usize = 20;

/// Index of an alternative in the ground set (`0..n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alternative(pub u8);

impl Alternative {
    pub fn new(index: usize) -> Self {
        debug_assert!(index < MAX_ALTERNATIVES);
        Alternative(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u32 {
        1 << self.0
    }
}

/// A subset of the ground set, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Menu(u32);

impl Menu {
    pub const EMPTY: Menu = Menu(0);

    pub fn from_bits(bits: u32) -> Self {
        Menu(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ALTERNATIVES);
        Menu(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(a: Alternative) -> Self {
        Menu(a.bit())
    }

    pub fn from_alternatives(items: impl IntoIterator<Item = Alternative>) -> Self {
        Menu(items.into_iter().fold(0, |acc, a| acc | a.bit()))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: Alternative) -> bool {
        self.0 & a.bit() != 0
    }

    pub fn is_subset_of(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Menu) -> Menu {
        Menu(self.0 | other.0)
    }

    pub fn intersection(self, other: Menu) -> Menu {
        Menu(self.0 & other.0)
    }

    pub fn difference(self, other: Menu) -> Menu {
        Menu(self.0 & !other.0)
    }

    pub fn with(self, a: Alternative) -> Menu {
        Menu(self.0 | a.bit())
    }

    pub fn without(self, a: Alternative) -> Menu {
        Menu(self.0 & !a.bit())
    }

    /// Lowest-indexed member.
    pub fn first(self) -> Option<Alternative> {
        (self.0 != 0).then(|| Alternative(self.0.trailing_zeros() as u8))
    }

    /// Members in increasing index order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// All nonempty subsets of this menu, in increasing bitmask order.
    pub fn submenus(self) -> Submenus {
        Submenus {
            mask: self.0,
            current: 0,
            done: self.0 == 0,
        }
    }

    /// All supersets of this menu inside `ground` (including the menu itself).
    pub fn supersets_within(self, ground: Menu) -> impl Iterator<Item = Menu> {
        let base = self.0;
        let free = Menu(ground.0 & !base);
        std::iter::once(Menu(base)).chain(free.submenus().map(move |s| Menu(s.0 | base)))
    }
}

/// Every nonempty subset of the ground set of size `n`, in increasing bitmask order.
pub fn all_menus(n: usize) -> impl Iterator<Item = Menu> {
    (1..(1u32 << n)).map(Menu)
}

/// All nonempty subsets of `menu`, each exactly once.
pub fn submenus(menu: Menu) -> Submenus {
    menu.submenus()
}

#[derive(Clone, Debug)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = Alternative;

    fn next(&mut self) -> Option<Alternative> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Alternative(low as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

#[derive(Clone, Debug)]
pub struct Submenus {
    mask: u32,
    current: u32,
    done: bool,
}

impl Iterator for Submenus {
    type Item = Menu;

    fn next(&mut self) -> Option<Menu> {
        if self.done {
            return None;
        }
        let next = (self.current | !self.mask).wrapping_add(1) & self.mask;
        if next == 0 {
            self.done = true;
            return None;
        }
        self.current = next;
        Some(Menu(next))
    }
}

impl fmt::Display for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a.0)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn menu(items: &[usize]) -> Menu {
        Menu::from_alternatives(items.iter().map(|&i| Alternative::new(i)))
    }

    #[test]
    fn submenus_of_singleton() {
        let subs: Vec<Menu> = menu(&[0]).submenus().collect();
        assert_eq!(subs, vec![menu(&[0])]);
    }

    #[test]
    fn submenus_of_pair_in_order() {
        let subs: Vec<Menu> = menu(&[0, 1]).submenus().collect();
        assert_eq!(subs, vec![menu(&[0]), menu(&[1]), menu(&[0, 1])]);
    }

    #[test]
    fn submenus_of_four_count() {
        assert_eq!(menu(&[0, 1, 2, 3]).submenus().count(), 15);
    }

    #[test]
    fn empty_menu_has_no_submenus() {
        assert_eq!(Menu::EMPTY.submenus().count(), 0);
    }

    #[test]
    fn supersets_include_self() {
        let sup: Vec<Menu> = menu(&[1]).supersets_within(Menu::full(3)).collect();
        assert_eq!(sup.len(), 4);
        assert!(sup.iter().all(|s| menu(&[1]).is_subset_of(*s)));
    }

    proptest! {
        #[test]
        fn submenus_are_distinct_subsets(bits in 1u32..(1 << 12)) {
            let m = Menu::from_bits(bits);
            let subs: Vec<Menu> = m.submenus().collect();
            prop_assert_eq!(subs.len(), (1usize << m.len()) - 1);
            let mut seen = std::collections::HashSet::new();
            for s in subs {
                prop_assert!(!s.is_empty());
                prop_assert!(s.is_subset_of(m));
                prop_assert!(seen.insert(s));
            }
        }
    }
}
