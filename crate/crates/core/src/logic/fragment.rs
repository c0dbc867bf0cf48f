//! Syntactic fragments accepted by the time-and-graph (L1) and global (L2)
//! compilers. Both are checked per occurrence: an atom counts as guarded
//! only if that very occurrence sits below a `Y`/`P`.

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Fragment {
    #[default]
    Any,
    L1,
    L2,
}

/// First `<>psi` (pre-order) whose body mixes temporal operators with
/// unguarded atoms.
pub fn l1_violation(phi: &Formula) -> Option<&Formula> {
    let mut found = None;
    phi.walk(&mut |f| {
        if found.is_none() {
            if let Formula::Diamond(body) = f {
                if body.has_temporal() && !body.atoms_guarded() {
                    found = Some(f);
                }
            }
        }
    });
    found
}

pub fn in_fragment_l1(phi: &Formula) -> bool {
    l1_violation(phi).is_none()
}

/// First `Y`/`P` occurrence that is not the immediate child of a `<>`.
pub fn l2_violation(phi: &Formula) -> Option<&Formula> {
    fn go(f: &Formula, under_diamond: bool) -> Option<&Formula> {
        if f.is_temporal() && !under_diamond {
            return Some(f);
        }
        let child_under = matches!(f, Formula::Diamond(_));
        f.children().into_iter().find_map(|c| go(c, child_under))
    }
    go(phi, false)
}

pub fn in_fragment_l2(phi: &Formula) -> bool {
    l2_violation(phi).is_none()
}

impl Fragment {
    pub fn admits(self, phi: &Formula) -> bool {
        match self {
            Fragment::Any => true,
            Fragment::L1 => in_fragment_l1(phi),
            Fragment::L2 => in_fragment_l2(phi),
        }
    }
}
