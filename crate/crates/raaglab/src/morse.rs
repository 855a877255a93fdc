//! Explicit constants for Morse geodesics: the Hausdorff-distance bound
//! between a Morse subsegment and a quasi-geodesic with the same
//! endpoints, and the product-diameter bound it yields.

/// Hausdorff-distance bound `1 + 6A + 3B + 9A·M(A,B)` for an
/// (A,B)-quasigeodesic against a subsegment of an M-Morse geodesic.
pub fn morse_hausdorff_bound(a: f64, b: f64, m_ab: f64) -> f64 {
    1.0 + 6.0 * a + 3.0 * b + 9.0 * a * m_ab
}

/// Diameter bound for the intersection of an M-Morse geodesic with an
/// isometrically embedded product of two unbounded factors:
/// `C(1, 2C(1,0)) + C(3, 2C(1,0)) + 2C(1,0)` where
/// `C(A,B) = 1 + 6A + 3B + 9A·M(A,B)`.
pub fn morse_product_diameter_bound(gauge: impl Fn(f64, f64) -> f64) -> f64 {
    let c = |a: f64, b: f64| morse_hausdorff_bound(a, b, gauge(a, b));
    let c10 = c(1.0, 0.0);
    c(1.0, 2.0 * c10) + c(3.0, 2.0 * c10) + 2.0 * c10
}
