use crate::poly::{FieldElement, Polynomial};

/// `polynomial(alpha) = target`, checked exactly.
///
/// `verified` is recomputed on construction: it holds iff the evaluation
/// matches and `alpha` is a primitive element.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate<E> {
    pub alpha: E,
    pub polynomial: Polynomial,
    pub target: E,
    pub verified: bool,
}

impl<E: FieldElement> WitnessCertificate<E> {
    pub fn new(alpha: E, polynomial: Polynomial, target: E) -> Self {
        let verified = Self::check(&alpha, &polynomial, &target);
        WitnessCertificate {
            alpha,
            polynomial,
            target,
            verified,
        }
    }

    fn check(alpha: &E, polynomial: &Polynomial, target: &E) -> bool {
        alpha.is_primitive() && polynomial.eval(alpha) == *target
    }

    /// Re-run the exact check, ignoring the stored flag.
    pub fn recheck(&self) -> bool {
        Self::check(&self.alpha, &self.polynomial, &self.target)
    }

    pub fn degree(&self) -> usize {
        self.polynomial.degree()
    }
}
