//! Property suites over a complex, shared by the command line and the tests.
//! Every failure message carries a replayable word or cell literal.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chains::{boundary, leibniz_defect, render, Chain, Ring, Variant};
use crate::cobar::compare_theorem2;
use crate::error::{Error, Result};
use crate::path::{one_skeleton, PathModel};
use crate::random::{rng, WordSampler};
use crate::relations::{check_cubical, check_degeneracies};
use crate::simplicial::SimplicialPresentation;
use crate::word::LoopModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Face and degeneracy relations on random loop and path cells.
    Cubical,
    /// `d^2 = 0` on random words.
    Dsq,
    /// The Leibniz rule on random pairs.
    Leibniz,
    /// Loop-model boundary against the hat-cobar boundary on all words in a window.
    Theorem2,
    /// Connectivity and unique edge lifting of the covering graph.
    Covering,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Cubical,
        Suite::Dsq,
        Suite::Leibniz,
        Suite::Theorem2,
        Suite::Covering,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Cubical => "cubical",
            Suite::Dsq => "dsq",
            Suite::Leibniz => "leibniz",
            Suite::Theorem2 => "theorem2",
            Suite::Covering => "covering",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "unknown suite `{s}` (expected cubical, dsq, leibniz, theorem2 or covering)"
                ),
            })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: usize,
    /// Maximal degree for the comparator.
    pub degree: usize,
    /// Maximal word length for the comparator, maximal tail length for the cover.
    pub max_len: usize,
    /// Steps of the random walks that generate samples.
    pub steps: usize,
    /// Variants to exercise.
    pub variants: Vec<Variant>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: crate::random::DEFAULT_SEED,
            samples: 200,
            degree: 4,
            max_len: 4,
            steps: 4,
            variants: vec![Variant::De, Variant::Normalized],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub complex: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{} {} on {}: {} checked, {} failures",
            status,
            self.suite,
            self.complex,
            self.checked,
            self.failures.len()
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "\n  first: {first}")?;
        }
        Ok(())
    }
}

pub fn run_suite(
    x: &SimplicialPresentation,
    suite: Suite,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    let model = LoopModel::new(x)?;
    let mut report = SuiteReport {
        suite: suite.to_string(),
        complex: x.name().to_string(),
        checked: 0,
        failures: Vec::new(),
    };
    let mut r = rng(opts.seed);
    let mut sampler = WordSampler::new(&model, 3);
    match suite {
        Suite::Cubical => {
            let paths = PathModel::new(&model);
            for k in 0..opts.samples {
                sampler.degenerate_probability = if k % 2 == 0 { 0.0 } else { 0.3 };
                let w = model.raw(&sampler.sample(&mut r, opts.steps));
                let mut failures = check_cubical(&model, &w)?;
                failures.extend(check_degeneracies(&model, &w)?);
                let c = sampler.sample_path(&mut r, 3, opts.steps).raw();
                failures.extend(check_cubical(&paths, &c)?);
                failures.extend(check_degeneracies(&paths, &c)?);
                report.checked += 2;
                report
                    .failures
                    .extend(failures.iter().map(ToString::to_string));
            }
        }
        Suite::Dsq => {
            for k in 0..opts.samples {
                sampler.degenerate_probability = if k % 2 == 0 { 0.0 } else { 0.3 };
                let w = sampler.sample(&mut r, opts.steps);
                for &v in &opts.variants {
                    let c = Chain::word(Ring::Integers, v, w.clone());
                    let dd = boundary(&model, &boundary(&model, &c)?)?;
                    report.checked += 1;
                    if !dd.is_zero() {
                        report.failures.push(format!(
                            "[{v}] d(d({})) = {}",
                            model.render(&w),
                            render(&model, &dd)
                        ));
                    }
                }
            }
        }
        Suite::Leibniz => {
            for k in 0..opts.samples {
                sampler.degenerate_probability = if k % 2 == 0 { 0.0 } else { 0.3 };
                let u = sampler.sample(&mut r, opts.steps);
                let w = sampler.sample(&mut r, opts.steps);
                for &v in &opts.variants {
                    let cu = Chain::word(Ring::Integers, v, u.clone());
                    let cw = Chain::word(Ring::Integers, v, w.clone());
                    let defect = leibniz_defect(&model, &cu, &cw)?;
                    report.checked += 1;
                    if !defect.is_zero() {
                        report.failures.push(format!(
                            "[{v}] u = {}, v = {}: defect {}",
                            model.render(&u),
                            model.render(&w),
                            render(&model, &defect)
                        ));
                    }
                }
            }
        }
        Suite::Theorem2 => {
            for &v in &opts.variants {
                let c = compare_theorem2(&model, v, opts.degree, opts.max_len)?;
                report.checked += c.checked;
                report
                    .failures
                    .extend(c.mismatches.iter().map(|m| format!("[{v}] {m}")));
            }
        }
        Suite::Covering => {
            let paths = PathModel::new(&model);
            let g = one_skeleton(&model, opts.max_len)?;
            report.checked = g.vertices.len();
            if !g.is_connected() {
                report.failures.push(format!(
                    "covering graph with tails of length <= {} is disconnected",
                    opts.max_len
                ));
            }
            report.failures.extend(g.lifting_failures(&paths));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary_simplex, sphere_quotient, wedge_of_circles};

    #[test]
    fn suites_pass_on_small_fixtures() {
        let opts = SuiteOptions {
            samples: 20,
            degree: 2,
            max_len: 3,
            ..SuiteOptions::default()
        };
        for x in [
            sphere_quotient(2).unwrap(),
            boundary_simplex(2).unwrap(),
            wedge_of_circles(2).unwrap(),
        ] {
            for s in Suite::ALL {
                let rep = run_suite(&x, s, &opts).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let x = boundary_simplex(3).unwrap();
        let opts = SuiteOptions {
            samples: 10,
            ..SuiteOptions::default()
        };
        let a = run_suite(&x, Suite::Leibniz, &opts).unwrap();
        let b = run_suite(&x, Suite::Leibniz, &opts).unwrap();
        assert_eq!(a, b);
    }
}
