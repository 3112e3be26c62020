use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::diff;
use crate::spinor::{inner, sigma_apply, CVec3, Spinor};

pub const CSV_HEADER: &str = "t,v1_re,v1_im,v2_re,v2_im,F1_re,F1_im,F2_re,F2_im,F3_re,F3_im,norm";

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Spinor samples on a strictly monotone time grid, with the field at each
/// node.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Spinor>,
    pub fields: Vec<CVec3>,
    /// Largest local error estimate of the integrator (0 for exact samples).
    pub est_error: f64,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<Spinor>, fields: Vec<CVec3>, est_error: f64) -> Result<Self> {
        if times.len() != states.len() || times.len() != fields.len() {
            return Err(Error::Invalid("trajectory columns have different lengths".into()));
        }
        let dir = times.windows(2).next().map_or(1.0, |w| (w[1] - w[0]).signum());
        if times.windows(2).any(|w| (w[1] - w[0]) * dir <= 0.0) {
            return Err(Error::Invalid("trajectory times must be strictly monotone".into()));
        }
        Ok(Trajectory { times, states, fields, est_error })
    }

    /// Samples a closed-form spinor path; the field column is zero unless
    /// `field` is given.
    pub fn from_fn(times: &[f64], v: impl Fn(f64) -> Result<Spinor>, field: Option<&dyn Field>) -> Result<Self> {
        let states = times.iter().map(|&t| v(t)).collect::<Result<Vec<_>>>()?;
        let fields = match field {
            Some(f) => times.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>()?,
            None => vec![CVec3::zero(); times.len()],
        };
        Trajectory::new(times.to_vec(), states, fields, 0.0)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `(V, V)` at every node.
    pub fn norms_sqr(&self) -> Vec<f64> {
        self.states.iter().map(|v| v.norm_sqr()).collect()
    }

    /// `dV/dt` by finite differences on the grid (4th order inside, 3rd at
    /// the ends).
    pub fn derivative(&self) -> Result<Vec<Spinor>> {
        if self.len() < 5 {
            return Err(Error::Invalid("at least 5 samples are needed to differentiate a trajectory".into()));
        }
        Ok(diff::grid_derivative(&self.times, &self.states))
    }

    /// Relative residual `‖i dV/dt − (σ·F)V‖ / ‖V‖` per node, with the field
    /// taken from `field` (or the stored column when `None`).
    pub fn residuals(&self, field: Option<&dyn Field>) -> Result<Vec<f64>> {
        let dv = self.derivative()?;
        self.times
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                let f = match field {
                    Some(fl) => fl.eval(t)?,
                    None => self.fields[k],
                };
                let v = self.states[k];
                Ok((dv[k] * I - sigma_apply(&f, &v)).norm() / v.norm().max(1e-300))
            })
            .collect()
    }

    /// Largest residual over nodes whose 5-point stencil is centered, which
    /// excludes the two nodes at each end.
    pub fn max_interior_residual(&self, field: Option<&dyn Field>) -> Result<f64> {
        let r = self.residuals(field)?;
        let n = r.len();
        Ok(r[2..n - 2].iter().cloned().fold(0.0, f64::max))
    }

    /// Replaces every state by `f(t, V)` (and the field by `g(t)` when given).
    pub fn map(&self, f: impl Fn(f64, &Spinor) -> Result<Spinor>, g: Option<&dyn Field>) -> Result<Trajectory> {
        let states = self.times.iter().zip(&self.states).map(|(&t, v)| f(t, v)).collect::<Result<Vec<_>>>()?;
        let fields = match g {
            Some(g) => self.times.iter().map(|&t| g.eval(t)).collect::<Result<Vec<_>>>()?,
            None => self.fields.clone(),
        };
        Trajectory::new(self.times.clone(), states, fields, self.est_error)
    }

    /// Largest `‖V − W‖` between two trajectories on the same grid.
    pub fn max_deviation(&self, other: &Trajectory) -> Result<f64> {
        if self.times != other.times {
            return Err(Error::Invalid("trajectories are sampled on different grids".into()));
        }
        Ok(self.states.iter().zip(&other.states).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max))
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for k in 0..self.len() {
            let (v, f) = (self.states[k], self.fields[k]);
            let vals = [
                self.times[k],
                v.v1.re,
                v.v1.im,
                v.v2.re,
                v.v2.im,
                f.x.re,
                f.x.im,
                f.y.re,
                f.y.im,
                f.z.re,
                f.z.im,
                inner(&v, &v).re.sqrt(),
            ];
            let line: Vec<String> = vals.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads the format written by [`Trajectory::write_csv`]. The `norm`
    /// column is ignored.
    pub fn read_csv(r: impl BufRead) -> Result<Trajectory> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Invalid("empty trajectory CSV".into()))??;
        if header.trim() != CSV_HEADER {
            return Err(Error::Invalid(format!("unexpected trajectory CSV header `{}`", header.trim())));
        }
        let (mut times, mut states, mut fields) = (vec![], vec![], vec![]);
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let vals = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| Error::Invalid(format!("trajectory CSV line {}: {e}", i + 2)))?;
            if vals.len() != 12 {
                return Err(Error::Invalid(format!("trajectory CSV line {}: expected 12 columns", i + 2)));
            }
            times.push(vals[0]);
            states.push(Spinor::new(C64::new(vals[1], vals[2]), C64::new(vals[3], vals[4])));
            fields.push(CVec3::new(C64::new(vals[5], vals[6]), C64::new(vals[7], vals[8]), C64::new(vals[9], vals[10])));
        }
        Trajectory::new(times, states, fields, 0.0)
    }
}

/// Writes recovered fields in the trajectory schema, with the spinor columns
/// taken from `source`.
pub(crate) fn with_fields(source: &Trajectory, fields: Vec<CVec3>) -> Result<Trajectory> {
    Trajectory::new(source.times.clone(), source.states.clone(), fields, source.est_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let ts: Vec<f64> = (0..7).map(|k| 0.1 * k as f64).collect();
        let tr = Trajectory::from_fn(&ts, |t| Ok(Spinor::new(C64::new(t.cos(), 0.1), C64::new(-t, t.sin()))), Some(&CVec3::from_real([1.0, 2.0, 3.0]))).unwrap();
        let s = tr.to_csv_string();
        assert!(s.starts_with(CSV_HEADER));
        let back = Trajectory::read_csv(s.as_bytes()).unwrap();
        assert_eq!(back, tr);
        assert!(Trajectory::read_csv("t,x\n".as_bytes()).is_err());
    }

    #[test]
    fn rejects_non_monotone_times() {
        let v = Spinor::from_real(1.0, 0.0);
        let f = CVec3::zero();
        assert!(Trajectory::new(vec![0.0, 1.0, 1.0], vec![v; 3], vec![f; 3], 0.0).is_err());
        assert!(Trajectory::new(vec![1.0, 0.5, 0.0], vec![v; 3], vec![f; 3], 0.0).is_ok());
    }
}
