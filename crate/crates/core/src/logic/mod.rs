//! The two-dimensional product logic over past time (`Y`, `P`) and graph
//! neighbourhood (`<>`): syntax, subformula enumeration, model checking and
//! the two syntactic fragments used by the restricted compilers.

mod check;
mod fragment;
mod parser;
mod random;
mod subformula;

pub use check::{check, check_index, CheckError, SemanticsMode, TruthTable};
pub use fragment::{in_fragment_l1, in_fragment_l2, l1_violation, l2_violation, Fragment};
pub use parser::{parse_formula, ParseError};
pub use random::{random_formula, RandomFormulaParams, SamplingBudgetExhausted};
pub use subformula::{enumerate_subformulas, Node, SubformulaIndex};

use std::fmt;

/// Formula AST. Colour indices are 1-based, matching the surface names `c1, c2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Some neighbour in the current snapshot.
    Diamond(Box<Formula>),
    /// Held at the previous snapshot.
    Yesterday(Box<Formula>),
    /// Held at some strictly earlier snapshot.
    Past(Box<Formula>),
}

impl Formula {
    pub fn atom(colour: usize) -> Formula {
        assert!(colour >= 1, "colour indices are 1-based");
        Formula::Atom(colour)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// `!( !a & !b )`
    pub fn or(self, other: Formula) -> Formula {
        self.not().and(other.not()).not()
    }

    /// `!( a & !b )`
    pub fn implies(self, other: Formula) -> Formula {
        self.and(other.not()).not()
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Box::new(self))
    }

    pub fn yesterday(self) -> Formula {
        Formula::Yesterday(Box::new(self))
    }

    pub fn past(self) -> Formula {
        Formula::Past(Box::new(self))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Not(a) | Formula::Diamond(a) | Formula::Yesterday(a) | Formula::Past(a) => {
                vec![a]
            }
            Formula::And(a, b) => vec![a, b],
        }
    }

    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Largest colour index occurring in the formula (0 if none).
    pub fn max_colour(&self) -> usize {
        match self {
            Formula::Atom(c) => *c,
            _ => self
                .children()
                .into_iter()
                .map(Formula::max_colour)
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_temporal(&self) -> bool {
        matches!(self, Formula::Yesterday(_) | Formula::Past(_))
    }

    /// Contains a `Y` or `P` anywhere (including at the root).
    pub fn has_temporal(&self) -> bool {
        self.is_temporal() || self.children().into_iter().any(Formula::has_temporal)
    }

    /// Every atom occurrence sits below some `Y`/`P` of this formula.
    pub fn atoms_guarded(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Yesterday(_) | Formula::Past(_) => true,
            _ => self.children().into_iter().all(Formula::atoms_guarded),
        }
    }

    /// Pre-order walk over every subformula occurrence.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::And(..) => 1,
            _ => 2,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(c) => write!(f, "c{c}"),
            Formula::Not(a) => {
                write!(f, "!")?;
                a.fmt_operand(f, 2)
            }
            Formula::Diamond(a) => {
                write!(f, "<>")?;
                a.fmt_operand(f, 2)
            }
            Formula::Yesterday(a) | Formula::Past(a) => {
                let op = if matches!(self, Formula::Yesterday(_)) { "Y" } else { "P" };
                write!(f, "{op}")?;
                if a.precedence() < 2 {
                    write!(f, "({a})")
                } else {
                    write!(f, " {a}")
                }
            }
            Formula::And(a, b) => {
                a.fmt_operand(f, 1)?;
                write!(f, " & ")?;
                b.fmt_operand(f, 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips_through_parser() {
        let fig1 = "c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))";
        let f = parse_formula(fig1).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), f);
        assert_eq!(printed, "c1 & P c2 & <>(!c1 & c2 & Y(c1 & !c2))");
        let nested = Formula::atom(1).and(Formula::atom(2).and(Formula::atom(3)));
        assert_eq!(nested.to_string(), "c1 & (c2 & c3)");
        assert_eq!(Formula::atom(1).yesterday().past().diamond().to_string(), "<>P Y c1");
    }

    #[test]
    fn structural_queries() {
        let f = parse_formula("<>(P c1 & c2)").unwrap();
        assert_eq!(f.depth(), 3);
        assert_eq!(f.max_colour(), 2);
        assert!(f.has_temporal());
        assert!(!f.atoms_guarded());
        assert!(parse_formula("!Y c1 & P(c2 & c1)").unwrap().atoms_guarded());
    }
}
