//! Choice datasets: a labelled ground set plus the chosen subset of each menu.
//!
//! Text format:
//!
//! ```text
//! alternatives: x y z
//! partial            # optional
//! {x,y,z} -> {x}
//! {x,y} -> {x,y}
//! ```
//!
//! Singleton menus may be omitted; their choice is forced. `#` starts a
//! comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::menu::{all_menus, Alternative, Menu, MAX_ALTERNATIVES};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceDataset {
    labels: Vec<String>,
    /// Indexed by menu bits; `Menu::EMPTY` marks an unobserved menu.
    choices: Vec<Menu>,
    partial: bool,
}

fn validate_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label
            .chars()
            .any(|ch| ch.is_whitespace() || matches!(ch, '{' | '}' | ',' | '#' | '"' | ':'))
        || label.contains("->");
    if bad {
        Err(Error::InvalidLabel(label.to_string()))
    } else {
        Ok(())
    }
}

impl ChoiceDataset {
    /// Builds a total dataset from a choice function over every nonempty menu.
    pub fn from_fn<F>(labels: Vec<String>, mut choose: F) -> Result<Self>
    where
        F: FnMut(Menu) -> Menu,
    {
        let mut data = Self::empty(labels, false)?;
        for menu in all_menus(data.n()) {
            data.insert(0, menu, choose(menu))?;
        }
        Ok(data)
    }

    /// Builds a dataset from explicit `(menu, chosen)` pairs.
    pub fn from_pairs(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (Menu, Menu)>,
        partial: bool,
    ) -> Result<Self> {
        let mut data = Self::empty(labels, partial)?;
        for (menu, chosen) in pairs {
            data.insert(0, menu, chosen)?;
        }
        data.finish()?;
        Ok(data)
    }

    /// Fast constructor for enumeration: `choices` is indexed by menu bits and
    /// must already satisfy the dataset invariants.
    pub(crate) fn from_raw(labels: Vec<String>, choices: Vec<Menu>) -> Self {
        debug_assert_eq!(choices.len(), 1 << labels.len());
        ChoiceDataset {
            labels,
            choices,
            partial: false,
        }
    }

    fn empty(labels: Vec<String>, partial: bool) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Syntax {
                line: 1,
                message: "ground set is empty".into(),
            });
        }
        if labels.len() > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                count: labels.len(),
                max: MAX_ALTERNATIVES,
            });
        }
        let mut seen = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            validate_label(label)?;
            if seen.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidLabel(format!("{label} (duplicate)")));
            }
        }
        let size = 1usize << labels.len();
        Ok(ChoiceDataset {
            labels,
            choices: vec![Menu::EMPTY; size],
            partial,
        })
    }

    fn insert(&mut self, line: usize, menu: Menu, chosen: Menu) -> Result<()> {
        if menu.is_empty() || !menu.is_subset_of(self.ground()) {
            return Err(Error::Syntax {
                line,
                message: "menu must be a nonempty subset of the ground set".into(),
            });
        }
        if !self.choices[menu.bits() as usize].is_empty() {
            return Err(Error::DuplicateMenu {
                line,
                menu: self.format_menu(menu),
            });
        }
        if chosen.is_empty() {
            return Err(Error::EmptyChoice {
                line,
                menu: self.format_menu(menu),
            });
        }
        if !chosen.is_subset_of(menu) {
            return Err(Error::ChoiceNotSubset {
                line,
                menu: self.format_menu(menu),
                chosen: self.format_menu(chosen),
            });
        }
        self.choices[menu.bits() as usize] = chosen;
        Ok(())
    }

    /// Fills forced singleton choices and enforces totality.
    fn finish(&mut self) -> Result<()> {
        for i in 0..self.n() {
            let single = Menu::singleton(Alternative::new(i));
            if self.choices[single.bits() as usize].is_empty() {
                self.choices[single.bits() as usize] = single;
            }
        }
        if !self.partial {
            if let Some(missing) = all_menus(self.n()).find(|m| self.choice(*m).is_none()) {
                return Err(Error::MissingMenu {
                    menu: self.format_menu(missing),
                });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Syntax {
            line: 1,
            message: "expected `alternatives:` header".into(),
        })?;
        let labels = header
            .strip_prefix("alternatives:")
            .ok_or_else(|| Error::Syntax {
                line: header_line,
                message: "expected `alternatives:` header".into(),
            })?
            .split_whitespace()
            .map(str::to_string)
            .collect::<Vec<_>>();

        let mut pending = Vec::new();
        let mut partial = false;
        for (idx, (line, content)) in lines.enumerate() {
            if idx == 0 && content == "partial" {
                partial = true;
                continue;
            }
            pending.push((line, content));
        }

        let mut data = Self::empty(labels, partial).map_err(|e| match e {
            Error::Syntax { message, .. } => Error::Syntax {
                line: header_line,
                message,
            },
            other => other,
        })?;
        let names = data.labels.clone();
        let index: HashMap<&str, Alternative> = names
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), Alternative::new(i)))
            .collect();

        for (line, content) in pending {
            let (lhs, rhs) = content.split_once("->").ok_or_else(|| Error::Syntax {
                line,
                message: "expected `{menu} -> {chosen}`".into(),
            })?;
            let menu = parse_braced(lhs, &index, line)?;
            let chosen = parse_braced(rhs, &index, line)?;
            if menu.is_empty() {
                return Err(Error::Syntax {
                    line,
                    message: "menu is empty".into(),
                });
            }
            data.insert(line, menu, chosen)?;
        }
        data.finish()?;
        Ok(data)
    }

    /// Canonical text form: every observed menu, largest first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alternatives: {}", self.labels.join(" "));
        if self.partial {
            out.push_str("partial\n");
        }
        for menu in self.canonical_menu_order() {
            if let Some(chosen) = self.choice(menu) {
                let _ = writeln!(
                    out,
                    "{} -> {}",
                    self.format_menu(menu),
                    self.format_menu(chosen)
                );
            }
        }
        out
    }

    /// All menus, largest first, then lexicographic on member indices.
    pub fn canonical_menu_order(&self) -> Vec<Menu> {
        let mut menus: Vec<Menu> = all_menus(self.n()).collect();
        menus.sort_by_key(|m| {
            (
                std::cmp::Reverse(m.len()),
                m.members().map(|a| a.0).collect::<Vec<_>>(),
            )
        });
        menus
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Alternative) -> &str {
        &self.labels[a.index()]
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alternative> {
        (0..self.n()).map(Alternative::new)
    }

    pub fn find(&self, label: &str) -> Option<Alternative> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Alternative::new)
    }

    pub fn ground(&self) -> Menu {
        Menu::full(self.n())
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// True when every nonempty menu is observed.
    pub fn is_total(&self) -> bool {
        all_menus(self.n()).all(|m| self.choice(m).is_some())
    }

    pub fn require_total(&self) -> Result<()> {
        if self.partial && !self.is_total() {
            Err(Error::PartialDataset)
        } else {
            Ok(())
        }
    }

    pub fn choice(&self, menu: Menu) -> Option<Menu> {
        let c = *self.choices.get(menu.bits() as usize)?;
        (!c.is_empty()).then_some(c)
    }

    /// `c(A)`; the empty menu for unobserved menus.
    #[inline]
    pub fn c(&self, menu: Menu) -> Menu {
        self.choices[menu.bits() as usize]
    }

    pub fn observed_menus(&self) -> impl Iterator<Item = Menu> + '_ {
        all_menus(self.n()).filter(|m| self.choice(*m).is_some())
    }

    pub fn format_menu(&self, menu: Menu) -> String {
        let names: Vec<&str> = menu.members().map(|a| self.label(a)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Parses `{a,b}` using this dataset's labels.
    pub fn parse_menu(&self, text: &str) -> Result<Menu> {
        let index: HashMap<&str, Alternative> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), Alternative::new(i)))
            .collect();
        parse_braced(text, &index, 0)
    }

    pub fn menu_of(&self, labels: &[&str]) -> Result<Menu> {
        labels.iter().try_fold(Menu::EMPTY, |m, l| {
            self.find(l)
                .map(|a| m.with(a))
                .ok_or_else(|| Error::InvalidLabel(l.to_string()))
        })
    }
}

fn parse_braced(text: &str, index: &HashMap<&str, Alternative>, line: usize) -> Result<Menu> {
    let text = text.trim();
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Syntax {
            line,
            message: format!("expected braces around {text:?}"),
        })?;
    let mut menu = Menu::EMPTY;
    for token in inner.split(',').map(str::trim) {
        if token.is_empty() {
            if inner.trim().is_empty() {
                continue;
            }
            return Err(Error::Syntax {
                line,
                message: "empty label in set".into(),
            });
        }
        let a = index.get(token).ok_or_else(|| Error::Syntax {
            line,
            message: format!("unknown alternative {token:?}"),
        })?;
        menu = menu.with(*a);
    }
    Ok(menu)
}
