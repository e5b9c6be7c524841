//! Complex-coefficient polynomials: evaluation, differentiation,
//! exact-degree interpolation and Aberth root finding.

use num_complex::Complex64;

type C = Complex64;

/// Polynomial with ascending complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    pub coeffs: Vec<C>,
}

impl CPoly {
    pub fn new(coeffs: Vec<C>) -> Self {
        CPoly { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        CPoly {
            coeffs: vec![C::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C) -> C {
        let mut acc = C::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly::new(vec![C::new(0.0, 0.0)]);
        }
        CPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * C::new(k as f64, 0.0))
                .collect(),
        )
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Exact-degree interpolation through `(nodes[i], values[i])`.
    /// Nodes must be pairwise distinct; the result has degree
    /// `nodes.len() - 1`.
    pub fn interpolate(nodes: &[f64], values: &[C]) -> CPoly {
        assert_eq!(nodes.len(), values.len());
        let n = nodes.len();
        let mut coeffs = vec![C::new(0.0, 0.0); n];
        for i in 0..n {
            // Lagrange basis polynomial for node i, accumulated as coefficients
            let mut basis = vec![C::new(0.0, 0.0); n];
            basis[0] = C::new(1.0, 0.0);
            let mut deg = 0usize;
            let mut denom = 1.0f64;
            for j in 0..n {
                if j == i {
                    continue;
                }
                // basis *= (x - nodes[j])
                for k in (0..=deg).rev() {
                    let b = basis[k];
                    basis[k + 1] += b;
                    basis[k] = -b * C::new(nodes[j], 0.0);
                }
                deg += 1;
                denom *= nodes[i] - nodes[j];
            }
            let w = values[i] / C::new(denom, 0.0);
            for k in 0..n {
                coeffs[k] += basis[k] * w;
            }
        }
        CPoly::new(coeffs)
    }

    /// All complex roots by the Aberth–Ehrlich iteration. Deterministic for
    /// fixed coefficients. Intended for low degrees.
    pub fn roots(&self) -> Vec<C> {
        // trim trailing (near-)zero leading coefficients
        let mut coeffs = self.coeffs.clone();
        let scale = self.max_coeff_norm().max(1e-300);
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() < 1e-14 * scale {
            coeffs.pop();
        }
        let n = coeffs.len() - 1;
        if n == 0 {
            return vec![];
        }
        let p = CPoly::new(coeffs.clone());
        let dp = p.derivative();
        let lead = *coeffs.last().unwrap();
        let radius = 1.0
            + coeffs[..n]
                .iter()
                .map(|a| (a / lead).norm())
                .fold(0.0, f64::max);
        let mut z: Vec<C> = (0..n)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / n as f64;
                C::new(radius * ang.cos(), radius * ang.sin())
            })
            .collect();
        for _ in 0..500 {
            let mut max_step = 0.0f64;
            let snapshot = z.clone();
            for k in 0..n {
                let pv = p.eval(z[k]);
                let dv = dp.eval(z[k]);
                if pv.norm() == 0.0 {
                    continue;
                }
                let w = if dv.norm() > 0.0 {
                    pv / dv
                } else {
                    C::new(1e-8, 0.0)
                };
                let mut s = C::new(0.0, 0.0);
                for j in 0..n {
                    if j != k {
                        let d = z[k] - snapshot[j];
                        if d.norm() > 1e-300 {
                            s += d.inv();
                        }
                    }
                }
                let denom = C::new(1.0, 0.0) - w * s;
                let step = if denom.norm() > 1e-300 { w / denom } else { w };
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
            if max_step < 1e-15 {
                break;
            }
        }
        // one Newton polish pass
        for zk in z.iter_mut() {
            for _ in 0..3 {
                let pv = p.eval(*zk);
                let dv = dp.eval(*zk);
                if dv.norm() > 1e-300 {
                    let step = pv / dv;
                    if step.norm() < 1.0 {
                        *zk -= step;
                    }
                }
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }
}
