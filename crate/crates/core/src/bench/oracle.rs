use crate::scalar::{compensated_sum, Real};
use crate::spectral::{FrequencyIndex, SpectralFunction};

/// Best `m`-term `L_2` approximation: keeps the `m` largest coefficients by modulus (ties go to the
/// lexicographically smaller frequency) and returns the `l_2` norm of the rest.
pub fn l2_oracle<T: Real>(f: &SpectralFunction<T>, m: usize) -> (T, Vec<FrequencyIndex>) {
    let mut entries: Vec<(&FrequencyIndex, T)> = f.iter().map(|(k, c)| (k, c.norm_sqr())).collect();
    // stable sort keeps the lexicographic order among equal moduli
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    let kept = m.min(entries.len());
    let rest = compensated_sum(entries[kept..].iter().map(|(_, a)| *a)).sqrt();
    let mut support: Vec<FrequencyIndex> =
        entries[..kept].iter().map(|(k, _)| (*k).clone()).collect();
    support.sort();
    (rest, support)
}
