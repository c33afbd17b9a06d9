use super::generators::modular_unchecked;
use super::set_function::SetFunction;

/// Singleton values `h(N) - h(N∖i)` of the modular part.
pub fn modular_weights(h: &SetFunction) -> Vec<f64> {
    let full = h.full();
    (0..h.n()).map(|b| h[full] - h[full ^ 1 << b]).collect()
}

/// `h^m(I) = Σ_{i∈I} [h(N) - h(N∖i)]`.
pub fn modular_part(h: &SetFunction) -> SetFunction {
    modular_unchecked(h.ground(), &modular_weights(h))
}

/// `h^ti = h - h^m`. The formula is total; non-polymatroid input is accepted.
pub fn tight_part(h: &SetFunction) -> SetFunction {
    let m = modular_part(h);
    h - &m
}
