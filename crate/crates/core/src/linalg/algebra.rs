use super::matrix::RMatrix;
use super::subspace::Subspace;

/// Dimension of the unital associative algebra generated by `gens` inside
/// the `n × n` matrices. Equals `n²` exactly when the generators act
/// absolutely irreducibly.
pub fn generated_algebra_dimension(n: usize, gens: &[&RMatrix]) -> usize {
    let ambient = n * n;
    let mut words = vec![RMatrix::identity(n)];
    let mut span = Subspace::span(ambient, &[words[0].entries().to_vec()]);
    let mut next = 0;
    while next < words.len() && span.dim() < ambient {
        let word = words[next].clone();
        next += 1;
        for g in gens {
            let product = *g * &word;
            if !span.contains(product.entries()) {
                let mut vectors = span.basis().to_vec();
                vectors.push(product.entries().to_vec());
                span = Subspace::span(ambient, &vectors);
                words.push(product);
            }
        }
    }
    span.dim()
}
