//! Seeded random formulas. Fragment requests use a fragment-shaped proposal
//! followed by a classifier check, retried up to a fixed budget.

use super::{Formula, Fragment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const RETRY_BUDGET: usize = 10_000;
const ATOM_PROBABILITY: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no formula in the requested fragment after {0} attempts")]
pub struct SamplingBudgetExhausted(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomFormulaParams {
    pub max_depth: usize,
    pub colours: usize,
    pub fragment: Fragment,
}

impl Default for RandomFormulaParams {
    fn default() -> Self {
        RandomFormulaParams {
            max_depth: 5,
            colours: 3,
            fragment: Fragment::Any,
        }
    }
}

/// Constraint threaded through the L1 proposal.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Free,
    /// no `Y`/`P` allowed
    Static,
    /// atoms only below a `Y`/`P`
    Guarded,
}

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    colours: usize,
}

impl Gen<'_> {
    fn atom(&mut self) -> Formula {
        Formula::Atom(self.rng.gen_range(1..=self.colours))
    }

    fn any(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(ATOM_PROBABILITY) {
            return self.atom();
        }
        match self.rng.gen_range(0..6) {
            0 => self.any(depth - 1).not(),
            1 | 2 => {
                let a = self.any(depth - 1);
                a.and(self.any(depth - 1))
            }
            3 => self.any(depth - 1).diamond(),
            4 => self.any(depth - 1).yesterday(),
            _ => self.any(depth - 1).past(),
        }
    }

    fn l1(&mut self, depth: usize, ctx: Ctx) -> Formula {
        if ctx == Ctx::Guarded {
            // must reach a temporal operator before any atom
            if depth <= 1 || self.rng.gen_bool(0.4) {
                let inner = self.l1(depth.saturating_sub(1), Ctx::Free);
                return if self.rng.gen_bool(0.5) { inner.yesterday() } else { inner.past() };
            }
        } else if depth == 0 || self.rng.gen_bool(ATOM_PROBABILITY) {
            return self.atom();
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => self.l1(d, ctx).not(),
            1 | 2 => {
                let a = self.l1(d, ctx);
                a.and(self.l1(d, ctx))
            }
            3 => {
                let inner = match ctx {
                    Ctx::Static => Ctx::Static,
                    Ctx::Guarded => Ctx::Guarded,
                    Ctx::Free if self.rng.gen_bool(0.5) => Ctx::Static,
                    Ctx::Free => Ctx::Guarded,
                };
                self.l1(d, inner).diamond()
            }
            _ if ctx == Ctx::Static => self.l1(d, ctx).not(),
            4 => self.l1(d, Ctx::Free).yesterday(),
            _ => self.l1(d, Ctx::Free).past(),
        }
    }

    fn l2(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(ATOM_PROBABILITY) {
            return self.atom();
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => self.l2(d).not(),
            1 | 2 => {
                let a = self.l2(d);
                a.and(self.l2(d))
            }
            3 => self.l2(d).diamond(),
            4 if d > 0 => self.l2(d - 1).yesterday().diamond(),
            5 if d > 0 => self.l2(d - 1).past().diamond(),
            _ => self.l2(d).diamond(),
        }
    }
}

pub fn random_formula(params: &RandomFormulaParams, seed: u64) -> Result<Formula, SamplingBudgetExhausted> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gen = Gen {
        rng: &mut rng,
        colours: params.colours.max(1),
    };
    for _ in 0..RETRY_BUDGET {
        let phi = match params.fragment {
            Fragment::Any => gen.any(params.max_depth),
            Fragment::L1 => gen.l1(params.max_depth, Ctx::Free),
            Fragment::L2 => gen.l2(params.max_depth),
        };
        if phi.depth() <= params.max_depth && params.fragment.admits(&phi) {
            return Ok(phi);
        }
    }
    Err(SamplingBudgetExhausted(RETRY_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{in_fragment_l1, in_fragment_l2};

    #[test]
    fn depth_zero_is_atom() {
        let p = RandomFormulaParams {
            max_depth: 0,
            ..Default::default()
        };
        for seed in 0..20 {
            assert!(matches!(random_formula(&p, seed).unwrap(), Formula::Atom(_)));
        }
    }

    #[test]
    fn deterministic() {
        let p = RandomFormulaParams::default();
        assert_eq!(random_formula(&p, 5), random_formula(&p, 5));
    }

    #[test]
    fn fragment_contracts() {
        for (fragment, check) in [
            (Fragment::L1, in_fragment_l1 as fn(&Formula) -> bool),
            (Fragment::L2, in_fragment_l2),
        ] {
            let p = RandomFormulaParams {
                fragment,
                ..Default::default()
            };
            let mut temporal = 0;
            for seed in 0..300 {
                let phi = random_formula(&p, seed).unwrap();
                assert!(check(&phi), "{phi}");
                assert!(phi.depth() <= 5);
                assert!(phi.max_colour() <= 3);
                temporal += phi.has_temporal() as usize;
            }
            // the proposal should exercise temporal operators regularly
            assert!(temporal > 60, "{fragment:?}: {temporal}");
        }
    }
}
