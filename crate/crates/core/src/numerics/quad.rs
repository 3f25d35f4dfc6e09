//! Globally adaptive Gauss-Kronrod (7/15) quadrature with optional
//! inverse-square-root endpoint singularities removed by `x = end ± u²`.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Which interval ends carry an integrable `1/sqrt(distance)` singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    None,
    InvSqrtLo,
    InvSqrtHi,
    Both,
}

impl Singularity {
    fn at_lo(self) -> bool {
        matches!(self, Singularity::InvSqrtLo | Singularity::Both)
    }

    fn at_hi(self) -> bool {
        matches!(self, Singularity::InvSqrtHi | Singularity::Both)
    }
}

/// Evaluation point handed to the integrand.
///
/// Under a substitution the distances to the mapped end are exact (`u²`),
/// so integrands can avoid forming `x - lo` by cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

pub struct QuadratureProblem<F> {
    integrand: F,
    lo: f64,
    hi: f64,
    singularity: Singularity,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl<F: Fn(Abscissa) -> f64> QuadratureProblem<F> {
    pub fn new(integrand: F, lo: f64, hi: f64, singularity: Singularity, rel_tol: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Domain("quadrature interval must be finite with lo <= hi"));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain("quadrature rel_tol must lie in (0, 1)"));
        }
        let p = Self {
            integrand,
            lo,
            hi,
            singularity,
            rel_tol,
            abs_tol: 0.0,
            max_intervals: 2000,
        };
        p.check_singularities()?;
        Ok(p)
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol.max(0.0);
        self
    }

    pub fn with_max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n.max(1);
        self
    }

    // |f| * sqrt(d) must stay bounded as d -> 0 at a flagged end; sampled
    // over eight decades of distance.
    fn check_singularities(&self) -> Result<()> {
        let len = self.hi - self.lo;
        if len == 0.0 || self.singularity == Singularity::None {
            return Ok(());
        }
        let probe = |at_lo: bool| -> Result<()> {
            let mut first = 0.0;
            for k in 1..=5 {
                let d = len * libm::pow(10.0, -2.0 * k as f64);
                let pt = if at_lo {
                    Abscissa {
                        x: self.lo + d,
                        from_lo: d,
                        from_hi: len - d,
                    }
                } else {
                    Abscissa {
                        x: self.hi - d,
                        from_lo: len - d,
                        from_hi: d,
                    }
                };
                let g = ((self.integrand)(pt) * libm::sqrt(d)).abs();
                if !g.is_finite() {
                    return Err(Error::Domain("integrand is not finite near a flagged endpoint"));
                }
                if k == 1 {
                    first = g;
                } else if g > 1e3 * first.max(f64::MIN_POSITIVE) && g > 1e-300 {
                    return Err(Error::Domain("declared endpoint singularity is not integrable"));
                }
            }
            Ok(())
        };
        if self.singularity.at_lo() {
            probe(true)?;
        }
        if self.singularity.at_hi() {
            probe(false)?;
        }
        Ok(())
    }
}

/// Integrates `p` to `max(abs_tol, rel_tol * |I|)`.
///
/// Fails with [`Error::Accuracy`] (carrying the best estimate) if the
/// interval budget runs out first.
pub fn integrate<F: Fn(Abscissa) -> f64>(p: &QuadratureProblem<F>) -> Result<Quadrature> {
    let len = p.hi - p.lo;
    if len == 0.0 {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let f = &p.integrand;
    let (lo, hi) = (p.lo, p.hi);
    match (p.singularity.at_lo(), p.singularity.at_hi()) {
        (false, false) => adaptive(
            |x| {
                f(Abscissa {
                    x,
                    from_lo: x - lo,
                    from_hi: hi - x,
                })
            },
            lo,
            hi,
            p.budget(),
        ),
        (true, false) => adaptive(
            |u| {
                let d = u * u;
                2.0 * u
                    * f(Abscissa {
                        x: lo + d,
                        from_lo: d,
                        from_hi: len - d,
                    })
            },
            0.0,
            libm::sqrt(len),
            p.budget(),
        ),
        (false, true) => adaptive(
            |v| {
                let d = v * v;
                2.0 * v
                    * f(Abscissa {
                        x: hi - d,
                        from_lo: len - d,
                        from_hi: d,
                    })
            },
            0.0,
            libm::sqrt(len),
            p.budget(),
        ),
        (true, true) => {
            let half = 0.5 * len;
            let sub = Budget {
                abs_tol: 0.5 * p.abs_tol,
                ..p.budget()
            };
            let left = adaptive(
                |u| {
                    let d = u * u;
                    2.0 * u
                        * f(Abscissa {
                            x: lo + d,
                            from_lo: d,
                            from_hi: len - d,
                        })
                },
                0.0,
                libm::sqrt(half),
                sub,
            );
            let right = adaptive(
                |v| {
                    let d = v * v;
                    2.0 * v
                        * f(Abscissa {
                            x: hi - d,
                            from_lo: len - d,
                            from_hi: d,
                        })
                },
                0.0,
                libm::sqrt(half),
                sub,
            );
            match (left, right) {
                (Ok(l), Ok(r)) => Ok(Quadrature {
                    value: l.value + r.value,
                    error_estimate: l.error_estimate + r.error_estimate,
                    evaluations: l.evaluations + r.evaluations,
                }),
                (l, r) => {
                    let part = |q: Result<Quadrature>| match q {
                        Ok(q) => (q.value, q.error_estimate),
                        Err(Error::Accuracy {
                            estimate,
                            error_estimate,
                        }) => (estimate, error_estimate),
                        Err(_) => (f64::NAN, f64::INFINITY),
                    };
                    let (lv, le) = part(l);
                    let (rv, re) = part(r);
                    Err(Error::Accuracy {
                        estimate: lv + rv,
                        error_estimate: le + re,
                    })
                }
            }
        }
    }
}

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = g(center - dx) + g(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

#[derive(Clone, Copy)]
struct Budget {
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
}

impl<F> QuadratureProblem<F> {
    fn budget(&self) -> Budget {
        Budget {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_intervals: self.max_intervals,
        }
    }
}

fn adaptive<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, p: Budget) -> Result<Quadrature> {
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    panels.push(gk15(&g, a, b));
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|q| q.value).sum();
        let error: f64 = panels.iter().map(|q| q.error).sum();
        if !value.is_finite() {
            return Err(Error::Domain("integrand produced a non-finite value"));
        }
        if error <= p.abs_tol.max(p.rel_tol * value.abs()) {
            return Ok(Quadrature {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        // Worst panel; first index wins ties so the refinement order is fixed.
        let (worst, _) = panels.iter().enumerate().fold(
            (0, -1.0),
            |(bi, be), (i, q)| if q.error > be { (i, q.error) } else { (bi, be) },
        );
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if panels.len() >= p.max_intervals || mid <= pa || mid >= pb {
            return Err(Error::Accuracy {
                estimate: value,
                error_estimate: error,
            });
        }
        panels[worst] = gk15(&g, pa, mid);
        panels.push(gk15(&g, mid, pb));
        evaluations += 30;
    }
}

/// Convenience wrapper for integrands that only need `x`.
pub fn integrate_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, singularity: Singularity, rel_tol: f64) -> Result<f64> {
    let p = QuadratureProblem::new(|pt: Abscissa| f(pt.x), lo, hi, singularity, rel_tol)?;
    integrate(&p).map(|q| q.value)
}
