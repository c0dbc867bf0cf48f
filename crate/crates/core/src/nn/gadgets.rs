//! Small threshold networks over bits and integers.

use super::{Activation, Fnn, FnnLayer};
use crate::rational::{int, Q};

/// `1 - x`
pub fn not_gate() -> Fnn {
    Fnn::single(FnnLayer::from_entries(1, 1, [(0, 0, int(-1))], [(0, int(1))], Activation::TrRelu))
}

/// `trReLU(sum x - (arity - 1))`: 1 iff every input bit is 1.
pub fn and_gate(arity: usize) -> Fnn {
    Fnn::single(FnnLayer::from_entries(
        arity,
        1,
        (0..arity).map(|j| (0, j, int(1))),
        [(0, int(1) - Q::from_integer(arity as i64))],
        Activation::TrRelu,
    ))
}

/// `trReLU(sum x)`: 1 iff some input bit is 1.
pub fn or_threshold(arity: usize) -> Fnn {
    Fnn::single(FnnLayer::from_entries(
        arity,
        1,
        (0..arity).map(|j| (0, j, int(1))),
        [],
        Activation::TrRelu,
    ))
}

/// 1 iff the integer input equals `target`:
/// `trReLU(trReLU(x - target + 1) - trReLU(x - target))`.
pub fn eq_gate(target: i64) -> Fnn {
    let first = FnnLayer::from_entries(
        1,
        2,
        [(0, 0, int(1)), (1, 0, int(1))],
        [(0, int(1 - target)), (1, int(-target))],
        Activation::TrRelu,
    );
    let second = FnnLayer::from_entries(2, 1, [(0, 0, int(1)), (0, 1, int(-1))], [], Activation::TrRelu);
    Fnn::new(vec![first, second]).expect("two-layer gadget")
}

/// 1 iff the integer input is at most `threshold`: `trReLU(threshold + 1 - x)`.
pub fn leq_gate(threshold: i64) -> Fnn {
    Fnn::single(FnnLayer::from_entries(
        1,
        1,
        [(0, 0, int(-1))],
        [(0, int(threshold + 1))],
        Activation::TrRelu,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(f: &Fnn, x: i64) -> Q {
        f.eval(&[int(x)]).unwrap()[0]
    }

    #[test]
    fn eq_and_leq_on_non_positive_integers() {
        let eq = eq_gate(-1);
        let leq = leq_gate(-1);
        for d in -10..=0 {
            assert_eq!(scalar(&eq, d), int((d == -1) as i64), "eq at {d}");
            assert_eq!(scalar(&leq, d), int((d <= -1) as i64), "leq at {d}");
        }
        let eq0 = eq_gate(0);
        for d in -10..=3 {
            assert_eq!(scalar(&eq0, d), int((d == 0) as i64));
        }
    }

    #[test]
    fn boolean_gates_on_bits() {
        let and2 = and_gate(2);
        let or3 = or_threshold(3);
        for bits in 0..8u32 {
            let xs: Vec<Q> = (0..3).map(|k| int(((bits >> k) & 1) as i64)).collect();
            let (a, b, c) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
            assert_eq!(and2.eval(&xs[..2]).unwrap()[0], int((a && b) as i64));
            assert_eq!(or3.eval(&xs).unwrap()[0], int((a || b || c) as i64));
        }
        assert_eq!(and2.eval(&[int(1), int(1)]).unwrap()[0], int(1));
        assert_eq!(and2.eval(&[int(1), int(0)]).unwrap()[0], int(0));
    }
}
