use num_traits::One;

use super::{rat, RatPoly, Rational};

/// Lagrange basis polynomials in `var` for the nodes `xs`.
fn lagrange_basis(var: &str, xs: &[i64]) -> Vec<RatPoly> {
    let x = RatPoly::var(var);
    (0..xs.len())
        .map(|j| {
            let mut num = RatPoly::one();
            let mut den = Rational::one();
            for (k, &xk) in xs.iter().enumerate() {
                if k != j {
                    num = num * (&x - &RatPoly::from_int(xk));
                    den *= rat(xs[j] - xk);
                }
            }
            num.scale(&den.recip())
        })
        .collect()
}

/// The unique polynomial of degree `< axes[i].len()` in each `vars[i]` taking
/// the value `value(point)` at every point of the tensor grid.
pub fn interpolate_grid<F>(vars: &[&str], axes: &[Vec<i64>], value: F) -> RatPoly
where
    F: Fn(&[i64]) -> Rational,
{
    assert_eq!(vars.len(), axes.len());
    let bases: Vec<Vec<RatPoly>> = vars.iter().zip(axes).map(|(v, xs)| lagrange_basis(v, xs)).collect();
    let mut point = vec![0i64; axes.len()];
    recurse(&bases, axes, &value, 0, &mut point)
}

fn recurse<F>(bases: &[Vec<RatPoly>], axes: &[Vec<i64>], value: &F, depth: usize, point: &mut Vec<i64>) -> RatPoly
where
    F: Fn(&[i64]) -> Rational,
{
    if depth == axes.len() {
        return RatPoly::constant(value(point));
    }
    let mut acc = RatPoly::zero();
    for (j, &xj) in axes[depth].iter().enumerate() {
        point[depth] = xj;
        let inner = recurse(bases, axes, value, depth + 1, point);
        if !inner.is_zero() {
            acc += &bases[depth][j] * &inner;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::parse;

    #[test]
    fn recovers_bivariate_polynomial() {
        let target = parse("X0*(X0+X1+1) - 1/3*X1^2").unwrap();
        let axes = vec![vec![1, 2, 3], vec![0, 1, 2]];
        let got = interpolate_grid(&["X0", "X1"], &axes, |pt| {
            target.eval(&[("X0", rat(pt[0])), ("X1", rat(pt[1]))]).unwrap()
        });
        assert_eq!(got, target);
    }

    #[test]
    fn constant_data() {
        let got = interpolate_grid(&["X0"], &[vec![0, 5, 9]], |_| rat(7));
        assert_eq!(got, RatPoly::from_int(7));
        assert!(interpolate_grid(&["X0"], &[vec![1, 2]], |_| rat(0)).is_zero());
    }
}
