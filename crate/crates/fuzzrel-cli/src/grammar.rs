//! Colon-separated operator specs, e.g. `residual:product`,
//! `sn:lukasiewicz:standard`, `phi:power:2:lukasiewicz`, `wqam:log:0.5,0.5`.

use std::collections::VecDeque;

use fuzzrel_core::aggregation::{AggregatorSpec, WqamMap};
use fuzzrel_core::algebra::{
    AdditiveGenerator, Copula, GGenerator, Implication, MonotoneBijection, Negation, TConorm, TNorm,
};

use crate::CliError;

pub const TNORM_HELP: &str =
    "minimum|min, product, lukasiewicz, drastic, archimedean:<generator>, phi:<bijection>:<tnorm>";
pub const TCONORM_HELP: &str =
    "maximum|max, probabilistic, lukasiewicz, drastic, phi:<bijection>:<tconorm>";
pub const GENERATOR_HELP: &str = "neglog, one-minus, yager:<p>, aczel-alsina:<p>";
pub const BIJECTION_HELP: &str = "identity, power:<p>";
pub const NEGATION_HELP: &str = "standard, phi:<bijection>, power-complement:<p>";
pub const COPULA_HELP: &str = "product, min, lukasiewicz|w";
pub const IMPLICATION_HELP: &str = "residual:<tnorm>, sn:<tconorm>:<negation>, ql:<negation>:<tnorm>:<tconorm>, \
     t-power:<generator>, g:power:<p>, g:neglog-complement, probabilistic:<copula>, probabilistic-s:<copula>";
pub const AGGREGATOR_HELP: &str =
    "min, max, tnorm:<tnorm>, tconorm:<tconorm>, wqam:<identity|log|power:<p>>:<w1>,<w2>,...";

struct Tokens<'a> {
    src: &'a str,
    rest: VecDeque<&'a str>,
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Self {
        Tokens {
            src,
            rest: src.split(':').map(str::trim).collect(),
        }
    }

    fn next(&mut self, what: &str, options: &str) -> Result<&'a str, CliError> {
        self.rest
            .pop_front()
            .filter(|t| !t.is_empty())
            .ok_or_else(|| {
                CliError::Validation(format!(
                    "'{}': missing {what}; valid options: {options}",
                    self.src
                ))
            })
    }

    fn number(&mut self, what: &str) -> Result<f64, CliError> {
        let tok = self.next(what, "a number")?;
        tok.parse::<f64>().map_err(|_| {
            CliError::Validation(format!("'{}': {what} '{tok}' is not a number", self.src))
        })
    }

    fn finish<T>(self, value: T) -> Result<T, CliError> {
        if self.rest.is_empty() {
            Ok(value)
        } else {
            Err(CliError::Validation(format!(
                "'{}': unexpected trailing tokens '{}'",
                self.src,
                Vec::from(self.rest).join(":")
            )))
        }
    }
}

fn unknown(kind: &str, tok: &str, options: &str) -> CliError {
    CliError::Validation(format!("unknown {kind} '{tok}'; valid options: {options}"))
}

fn bijection(tk: &mut Tokens) -> Result<MonotoneBijection, CliError> {
    match tk.next("bijection", BIJECTION_HELP)? {
        "identity" => Ok(MonotoneBijection::Identity),
        "power" => Ok(MonotoneBijection::power(tk.number("exponent")?)?),
        other => Err(unknown("bijection", other, BIJECTION_HELP)),
    }
}

fn generator(tk: &mut Tokens) -> Result<AdditiveGenerator, CliError> {
    match tk.next("generator", GENERATOR_HELP)? {
        "neglog" => Ok(AdditiveGenerator::NegLog),
        "one-minus" => Ok(AdditiveGenerator::OneMinus),
        "yager" => Ok(AdditiveGenerator::yager(tk.number("exponent")?)?),
        "aczel-alsina" => Ok(AdditiveGenerator::aczel_alsina(tk.number("exponent")?)?),
        other => Err(unknown("generator", other, GENERATOR_HELP)),
    }
}

fn tnorm(tk: &mut Tokens) -> Result<TNorm, CliError> {
    match tk.next("t-norm", TNORM_HELP)? {
        "minimum" | "min" => Ok(TNorm::Minimum),
        "product" => Ok(TNorm::Product),
        "lukasiewicz" => Ok(TNorm::Lukasiewicz),
        "drastic" => Ok(TNorm::Drastic),
        "archimedean" => Ok(TNorm::archimedean(generator(tk)?)?),
        "phi" => {
            let phi = bijection(tk)?;
            Ok(TNorm::phi_transform(tnorm(tk)?, phi))
        }
        other => Err(unknown("t-norm", other, TNORM_HELP)),
    }
}

fn tconorm(tk: &mut Tokens) -> Result<TConorm, CliError> {
    match tk.next("t-conorm", TCONORM_HELP)? {
        "maximum" | "max" => Ok(TConorm::Maximum),
        "probabilistic" => Ok(TConorm::ProbabilisticSum),
        "lukasiewicz" => Ok(TConorm::Lukasiewicz),
        "drastic" => Ok(TConorm::Drastic),
        "phi" => {
            let phi = bijection(tk)?;
            Ok(TConorm::phi_transform(tconorm(tk)?, phi))
        }
        other => Err(unknown("t-conorm", other, TCONORM_HELP)),
    }
}

fn negation(tk: &mut Tokens) -> Result<Negation, CliError> {
    match tk.next("negation", NEGATION_HELP)? {
        "standard" => Ok(Negation::Standard),
        "phi" => Ok(Negation::phi(bijection(tk)?)),
        "power-complement" => Ok(Negation::power_complement(tk.number("exponent")?)?),
        other => Err(unknown("negation", other, NEGATION_HELP)),
    }
}

fn copula(tk: &mut Tokens) -> Result<Copula, CliError> {
    match tk.next("copula", COPULA_HELP)? {
        "product" => Ok(Copula::Product),
        "min" | "minimum" => Ok(Copula::Minimum),
        "lukasiewicz" | "w" => Ok(Copula::Lukasiewicz),
        other => Err(unknown("copula", other, COPULA_HELP)),
    }
}

fn implication(tk: &mut Tokens) -> Result<Implication, CliError> {
    let imp = match tk.next("implication", IMPLICATION_HELP)? {
        "residual" => Implication::residual(tnorm(tk)?)?,
        "sn" => {
            let s = tconorm(tk)?;
            Implication::sn(s, negation(tk)?)?
        }
        "ql" => {
            let n = negation(tk)?;
            let t = tnorm(tk)?;
            Implication::ql(n, t, tconorm(tk)?)?
        }
        "t-power" => Implication::t_power(generator(tk)?)?,
        "g" => match tk.next("g generator", "power:<p>, neglog-complement")? {
            "power" => Implication::g(GGenerator::power(tk.number("exponent")?)?)?,
            "neglog-complement" => Implication::g(GGenerator::NegLogComplement)?,
            other => {
                return Err(unknown(
                    "g generator",
                    other,
                    "power:<p>, neglog-complement",
                ))
            }
        },
        "probabilistic" => Implication::probabilistic(copula(tk)?)?,
        "probabilistic-s" => Implication::probabilistic_s(copula(tk)?)?,
        other => return Err(unknown("implication", other, IMPLICATION_HELP)),
    };
    Ok(imp)
}

pub fn parse_tnorm(s: &str) -> Result<TNorm, CliError> {
    let mut tk = Tokens::new(s);
    let t = tnorm(&mut tk)?;
    tk.finish(t)
}

pub fn parse_tconorm(s: &str) -> Result<TConorm, CliError> {
    let mut tk = Tokens::new(s);
    let t = tconorm(&mut tk)?;
    tk.finish(t)
}

pub fn parse_negation(s: &str) -> Result<Negation, CliError> {
    let mut tk = Tokens::new(s);
    let n = negation(&mut tk)?;
    tk.finish(n)
}

pub fn parse_generator(s: &str) -> Result<AdditiveGenerator, CliError> {
    let mut tk = Tokens::new(s);
    let g = generator(&mut tk)?;
    tk.finish(g)
}

pub fn parse_implication(s: &str) -> Result<Implication, CliError> {
    let mut tk = Tokens::new(s);
    let i = implication(&mut tk)?;
    tk.finish(i)
}

/// `arity` applies to min, max, tnorm and tconorm; a WQAM takes it from its weights.
pub fn parse_aggregator(s: &str, arity: usize) -> Result<AggregatorSpec, CliError> {
    let mut tk = Tokens::new(s);
    let spec = match tk.next("aggregator", AGGREGATOR_HELP)? {
        "min" | "minimum" => AggregatorSpec::minimum(arity)?,
        "max" | "maximum" => AggregatorSpec::maximum(arity)?,
        "tnorm" => AggregatorSpec::tnorm(tnorm(&mut tk)?, arity)?,
        "tconorm" => AggregatorSpec::tconorm(tconorm(&mut tk)?, arity)?,
        "wqam" => {
            let f = match tk.next("mean generator", "identity, log, power:<p>")? {
                "identity" | "arithmetic" => WqamMap::Identity,
                "log" | "geometric" => WqamMap::Log,
                "power" => WqamMap::Power(tk.number("exponent")?),
                other => return Err(unknown("mean generator", other, "identity, log, power:<p>")),
            };
            let raw = tk.next("weights", "comma-separated weights summing to 1")?;
            let weights = raw
                .split(',')
                .map(|w| {
                    w.trim().parse::<f64>().map_err(|_| {
                        CliError::Validation(format!("'{s}': weight '{w}' is not a number"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            AggregatorSpec::wqam(f, weights)?
        }
        other => return Err(unknown("aggregator", other, AGGREGATOR_HELP)),
    };
    let spec = tk.finish(spec)?;
    if spec.arity() != arity {
        return Err(CliError::Validation(format!(
            "aggregator {} takes {} relations, got {arity}",
            spec.name(),
            spec.arity()
        )));
    }
    Ok(spec)
}

fn unit(v: f64, src: &str) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(CliError::Validation(format!(
            "λ value {v} in '{src}' is outside [0, 1]"
        )))
    }
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Either a comma list `0.9,0.95,1` or an inclusive range `start:end:step`.
pub fn parse_lambdas(s: &str) -> Result<Vec<f64>, CliError> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Validation(format!("λ value '{t}' in '{s}' is not a number")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let values = match parts.as_slice() {
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step.is_nan() || step <= 0.0 || b < a {
                return Err(CliError::Validation(format!(
                    "range '{s}' needs start <= end and a positive step"
                )));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize;
            if count > 1_000_000 {
                return Err(CliError::Validation(format!(
                    "range '{s}' has too many values"
                )));
            }
            (0..=count).map(|k| round12(a + k as f64 * step)).collect()
        }
        _ => {
            return Err(CliError::Validation(format!(
                "λ spec '{s}' must be a comma list or start:end:step"
            )))
        }
    };
    values.into_iter().map(|v| unit(v, s)).collect()
}
