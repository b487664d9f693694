use rand::Rng;

use crate::error::{Error, Result};
use crate::point_process::{Config, DEFAULT_CAP};
use crate::random::rng;
use crate::scalar::Scalar;

/// Largest ground set that may be enumerated.
///
/// `DPP_MAX_ENUM` overrides the default of 2^20 configurations; the value counts
/// configurations, so the point cap is its base-2 logarithm rounded down.
pub fn enumeration_cap() -> usize {
    std::env::var("DPP_MAX_ENUM")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .map(|v| (63 - v.leading_zeros()) as usize)
        .unwrap_or(DEFAULT_CAP)
}

pub(crate) fn check_cap(points: usize) -> Result<()> {
    let cap = enumeration_cap();
    if points > cap {
        return Err(Error::CapExceeded { size: points, cap });
    }
    Ok(())
}

/// Probabilities of every configuration of an `n`-point set, indexed by mask.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbTable<S> {
    points: usize,
    values: Vec<S>,
}

impl<S: Scalar> ProbTable<S> {
    pub fn new(points: usize, values: Vec<S>) -> Result<Self> {
        check_cap(points)?;
        if values.len() != 1 << points {
            return Err(Error::DimensionMismatch {
                op: "ProbTable",
                detail: format!("{} values for {points} points", values.len()),
            });
        }
        Ok(Self { points, values })
    }

    pub fn from_fn(points: usize, mut f: impl FnMut(Config) -> Result<S>) -> Result<Self> {
        check_cap(points)?;
        let values = (0..1u64 << points)
            .map(|m| f(Config(m)))
            .collect::<Result<_>>()?;
        Ok(Self { points, values })
    }

    /// Unit mass on one configuration.
    pub fn point_mass(points: usize, at: Config) -> Result<Self> {
        Self::from_fn(points, |c| Ok(if c == at { S::one() } else { S::zero() }))
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, c: Config) -> &S {
        &self.values[c.0 as usize]
    }

    pub fn total(&self) -> S {
        self.values.iter().fold(S::zero(), |a, b| a + b.clone())
    }

    /// Rows `mask,value`.
    pub fn to_csv(&self) -> String {
        table_csv(&self.values)
    }
}

pub(crate) fn table_csv<S: Scalar>(values: &[S]) -> String {
    let mut out = String::from("mask,value\n");
    for (m, v) in values.iter().enumerate() {
        out.push_str(&format!("{m},{}\n", v.render()));
    }
    out
}

/// `rho(Y) = sum over X containing Y of T(X)`, indexed by mask.
///
/// The superset-sum transform runs in a fixed order, so rational results are
/// reproducible bit for bit.
pub fn brute_force_correlations<S: Scalar>(t: &ProbTable<S>) -> Result<Vec<S>> {
    check_cap(t.points)?;
    let mut rho = t.values.clone();
    for bit in 0..t.points {
        let b = 1usize << bit;
        for m in 0..rho.len() {
            if m & b == 0 {
                let v = rho[m].clone() + rho[m | b].clone();
                rho[m] = v;
            }
        }
    }
    Ok(rho)
}

/// Inverse-CDF draw from a nonnegative table.
pub fn enumerate_sample<S: Scalar>(t: &ProbTable<S>, seed: u64) -> Result<Config> {
    let weights = real_weights(t)?;
    Ok(draw(&weights, &mut rng(seed)))
}

/// `count` independent draws from one generator stream.
pub fn enumerate_samples<S: Scalar>(t: &ProbTable<S>, seed: u64, count: usize) -> Result<Vec<Config>> {
    let weights = real_weights(t)?;
    let mut r = rng(seed);
    Ok((0..count).map(|_| draw(&weights, &mut r)).collect())
}

fn real_weights<S: Scalar>(t: &ProbTable<S>) -> Result<Vec<f64>> {
    t.values
        .iter()
        .enumerate()
        .map(|(m, v)| {
            let z = v.to_complex();
            let negative = if S::EXACT {
                z.re < 0.0
            } else {
                z.re < -1e-12 || z.im.abs() > 1e-12
            };
            if negative || !z.re.is_finite() {
                return Err(Error::NegativeProbability {
                    config: m as u64,
                    value: v.render(),
                });
            }
            Ok(z.re.max(0.0))
        })
        .collect()
}

fn draw(weights: &[f64], r: &mut impl Rng) -> Config {
    let total: f64 = weights.iter().sum();
    let u = r.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (m, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last = m;
        }
        acc += w;
        if u < acc {
            return Config(m as u64);
        }
    }
    Config(last as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn point_mass_on_full_set() {
        let t = ProbTable::<Q>::point_mass(3, Config(0b111)).unwrap();
        let rho = brute_force_correlations(&t).unwrap();
        assert!(rho.iter().all(|v| *v == Q::from_i64(1)));
        for seed in 0..20 {
            assert_eq!(enumerate_sample(&t, seed).unwrap(), Config(0b111));
        }
    }

    #[test]
    fn uniform_two_points() {
        let t = ProbTable::new(2, vec![Q::from_ratio(1, 4); 4]).unwrap();
        let rho = brute_force_correlations(&t).unwrap();
        assert_eq!(rho[0b01], Q::from_ratio(1, 2));
        assert_eq!(rho[0], Q::from_i64(1));
        assert_eq!(rho[0b11], Q::from_ratio(1, 4));
    }

    #[test]
    fn negative_entries_refuse_sampling() {
        let t = ProbTable::new(1, vec![Q::from_i64(2), Q::from_i64(-1)]).unwrap();
        assert!(matches!(
            enumerate_sample(&t, 0),
            Err(Error::NegativeProbability { config: 1, .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let t = ProbTable::new(2, vec![Q::from_ratio(1, 4); 4]).unwrap();
        assert_eq!(
            enumerate_samples(&t, 7, 50).unwrap(),
            enumerate_samples(&t, 7, 50).unwrap()
        );
    }

    #[test]
    fn csv_rows() {
        let t = ProbTable::new(1, vec![Q::from_ratio(1, 3), Q::from_ratio(2, 3)]).unwrap();
        assert_eq!(t.to_csv(), "mask,value\n0,1/3\n1,2/3\n");
    }
}
