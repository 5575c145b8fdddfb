//! Generic finite Harder-Narasimhan recursion solver.
//!
//! Over a commutative semigroup with a slope-like total preorder, two
//! systems `(a_x)` and `(b_x)` in an associative ring are related by
//!
//! ```text
//! b_x = sum over strictly increasing sequences summing to x of
//!       a_{l_1} ... a_{l_k}
//! ```
//!
//! and the inverse is a signed sum over *stable* sequences (every proper
//! prefix sum has strictly smaller slope than the total):
//!
//! ```text
//! a_x = sum over stable sequences of (-1)^{k-1} b_{l_1} ... b_{l_k}.
//! ```
//!
//! Both require the decomposition sets to be finite; enumeration is guarded
//! by an explicit cap. The bundle semigroup `N* x Z` has infinite
//! decomposition sets and goes through the Zagier kernels instead; this
//! solver covers toy semigroups and cross-validation.

use std::fmt::Debug;

use crate::error::Error;

/// A commutative semigroup with a total preorder compatible with addition.
pub trait SlopeSemigroup {
    type Elem: Clone + PartialEq + Debug;

    /// Candidate sequence entries for decompositions of `total`, including
    /// `total` itself. Must be finite.
    fn parts(&self, total: &Self::Elem) -> Vec<Self::Elem>;

    /// `total - part`; `None` when `part == total` (empty remainder).
    fn subtract(&self, total: &Self::Elem, part: &Self::Elem) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The total preorder.
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.le(a, b) && !self.le(b, a)
    }
}

/// Minimal associative-ring interface; the ring may be noncommutative, and
/// all products are taken left to right.
pub trait HnRing: Clone {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl HnRing for crate::algebra::Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SeqKind {
    Increasing,
    Stable,
}

fn enumerate<S: SlopeSemigroup>(
    sg: &S,
    alpha: &S::Elem,
    kind: SeqKind,
    cap: usize,
) -> Result<Vec<Vec<S::Elem>>, Error> {
    struct Dfs<'a, S: SlopeSemigroup> {
        sg: &'a S,
        alpha: &'a S::Elem,
        kind: SeqKind,
        cap: usize,
        visited: usize,
        out: Vec<Vec<S::Elem>>,
    }

    impl<S: SlopeSemigroup> Dfs<'_, S> {
        fn run(
            &mut self,
            remaining: &S::Elem,
            prefix: &mut Vec<S::Elem>,
            sum: Option<S::Elem>,
        ) -> Result<(), Error> {
            for part in self.sg.parts(remaining) {
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::EnumerationCap { cap: self.cap });
                }
                if self.kind == SeqKind::Increasing {
                    if let Some(last) = prefix.last() {
                        if !self.sg.lt(last, &part) {
                            continue;
                        }
                    }
                }
                match self.sg.subtract(remaining, &part) {
                    None => {
                        // part == remaining: the sequence is complete.
                        prefix.push(part);
                        self.out.push(prefix.clone());
                        prefix.pop();
                    }
                    Some(rest) => {
                        let new_sum = match &sum {
                            None => part.clone(),
                            Some(s) => self.sg.add(s, &part),
                        };
                        // A proper prefix of a stable sequence must have
                        // strictly smaller slope than the total.
                        if self.kind == SeqKind::Stable && !self.sg.lt(&new_sum, self.alpha) {
                            continue;
                        }
                        prefix.push(part);
                        self.run(&rest, prefix, Some(new_sum))?;
                        prefix.pop();
                    }
                }
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        sg,
        alpha,
        kind,
        cap,
        visited: 0,
        out: Vec::new(),
    };
    dfs.run(alpha, &mut Vec::new(), None)?;
    Ok(dfs.out)
}

/// Forward recursion: `b_alpha` from the `a` system, summing over strictly
/// increasing-slope sequences.
pub fn hn_forward<S, A>(
    sg: &S,
    values: &impl Fn(&S::Elem) -> A,
    alpha: &S::Elem,
    cap: usize,
) -> Result<A, Error>
where
    S: SlopeSemigroup,
    A: HnRing,
{
    let seqs = enumerate(sg, alpha, SeqKind::Increasing, cap)?;
    let mut acc = A::zero();
    for seq in seqs {
        let mut prod: Option<A> = None;
        for elem in &seq {
            let v = values(elem);
            prod = Some(match prod {
                None => v,
                Some(p) => p.mul(&v),
            });
        }
        acc = acc.add(&prod.expect("sequences are nonempty"));
    }
    Ok(acc)
}

/// Closed-form inverse: `a_alpha` from the `b` system, a signed sum over
/// stable sequences.
pub fn solve_hn_finite<S, A>(
    sg: &S,
    values: &impl Fn(&S::Elem) -> A,
    alpha: &S::Elem,
    cap: usize,
) -> Result<A, Error>
where
    S: SlopeSemigroup,
    A: HnRing,
{
    let seqs = enumerate(sg, alpha, SeqKind::Stable, cap)?;
    let mut acc = A::zero();
    for seq in seqs {
        let mut prod: Option<A> = None;
        for elem in &seq {
            let v = values(elem);
            prod = Some(match prod {
                None => v,
                Some(p) => p.mul(&v),
            });
        }
        let mut term = prod.expect("sequences are nonempty");
        if seq.len() % 2 == 0 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The quadrant semigroup `N^2 - {0}` with slope `a / (a + b)`, used as the
/// finite test bed for the solver.
pub struct QuadrantSemigroup;

impl SlopeSemigroup for QuadrantSemigroup {
    type Elem = (u32, u32);

    fn parts(&self, total: &(u32, u32)) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..=total.0 {
            for b in 0..=total.1 {
                if (a, b) != (0, 0) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn subtract(&self, total: &(u32, u32), part: &(u32, u32)) -> Option<(u32, u32)> {
        if total == part {
            None
        } else {
            Some((total.0 - part.0, total.1 - part.1))
        }
    }

    fn add(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        (a.0 + b.0, a.1 + b.1)
    }

    fn le(&self, a: &(u32, u32), b: &(u32, u32)) -> bool {
        // a.0/(a.0+a.1) <= b.0/(b.0+b.1), cross-multiplied
        let lhs = (a.0 as u64) * ((b.0 + b.1) as u64);
        let rhs = (b.0 as u64) * ((a.0 + a.1) as u64);
        lhs <= rhs
    }
}
