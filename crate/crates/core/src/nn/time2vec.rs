use super::Activation;
use crate::rational::{int, Q};
use num_traits::Zero;

/// Time-difference encoder: slot 0 is `w_0 t + b_0`, every further slot is
/// `act(w_j t + b_j)` with a periodic activation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Time2Vec {
    w: Vec<Q>,
    b: Vec<Q>,
    act: Activation,
}

impl Time2Vec {
    /// Panics if `w` and `b` differ in length or are empty.
    pub fn new(w: Vec<Q>, b: Vec<Q>) -> Self {
        assert!(!w.is_empty() && w.len() == b.len(), "time2vec needs matching non-empty w and b");
        Time2Vec { w, b, act: Activation::Sin }
    }

    /// Single affine slot `t -> t`.
    pub fn affine_identity() -> Self {
        Time2Vec::new(vec![int(1)], vec![Q::zero()])
    }

    pub fn width(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[Q] {
        &self.w
    }

    pub fn bias(&self) -> &[Q] {
        &self.b
    }

    pub fn periodic_activation(&self) -> Activation {
        self.act
    }

    pub fn encode(&self, t: Q) -> Vec<Q> {
        self.w
            .iter()
            .zip(&self.b)
            .enumerate()
            .map(|(j, (w, b))| {
                let z = w * t + b;
                if j == 0 {
                    z
                } else {
                    self.act.apply(z)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn affine_slot() {
        let e = Time2Vec::affine_identity();
        assert_eq!(e.encode(int(0)), vec![int(0)]);
        assert_eq!(e.encode(int(-1)), vec![int(-1)]);
        assert_eq!(e.encode(int(-3)), vec![int(-3)]);
    }

    #[test]
    fn periodic_slots() {
        let e = Time2Vec::new(vec![int(2), int(1)], vec![int(1), int(0)]);
        let v = e.encode(frac(1, 2));
        assert_eq!(v[0], int(2));
        // sin(0.5) = 0.4794...
        assert_eq!(v[1], frac(491, 1024));
    }
}
