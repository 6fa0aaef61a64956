//! The expand, scan, construct and certify commands.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::registry::{lookup, Instance};
use super::sources::{is_file_arg, read_source, resolve, Resolved, Source};
use super::{Condition, Outcome, RunConfig, EXIT_OK, EXIT_PRECISION_CAP, EXIT_REFUTED};
use crate::algebra::{LaurentSeries, Poly, PrimeField};
use crate::cfengine::{cf_eval, cf_expand, cf_expand_rational, CfWord, Expansion, Halt};
use crate::construct::*;
use crate::error::{Error, Result};
use crate::littlewood::oracle::oracle_scan;
use crate::littlewood::*;
use crate::words::*;

fn letter_strings(e: &Expansion) -> Vec<String> {
    e.word.all_letters().iter().map(|l| l.to_string()).collect()
}

fn expansion_report(source: &str, p: u64, e: &Expansion, extra: Value) -> Value {
    let mut v = json!({
        "source": source,
        "p": p,
        "precision": e.precision,
        "halt": e.halt,
        "count": e.word.len(),
        "letters": letter_strings(e),
        "bad_witness": bad_witness(&e.word, e.word.tail.len()),
    });
    if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
        m.extend(x);
    }
    v
}

/// Expand an instance with precision doubling until `terms` letters are certified,
/// then confirm the prefix at twice the final precision.
pub(super) fn expand(source: &str, terms: usize, cfg: RunConfig) -> Result<Outcome> {
    if terms == 0 {
        return Err(Error::Invalid("--terms must be positive".into()));
    }
    if is_file_arg(source) {
        let e = match read_source(Path::new(source))? {
            Source::Series(s) => cf_expand(&s, terms)?,
            Source::Rational { num, den } => cf_expand_rational(&num, &den, terms)?,
            Source::Word(w) => {
                let (num, den) = CfWord::zero_then(w).to_rational();
                cf_expand_rational(&num, &den, terms)?
            }
        };
        let p = e.word.field().modulus();
        let code = if e.halt == Halt::PrecisionExhausted { EXIT_PRECISION_CAP } else { EXIT_OK };
        return Ok(Outcome::new("expand", expansion_report(source, p, &e, json!({})), code));
    }
    let inst = lookup(source)?;
    let p = inst.descriptor.p;
    let mut last = None;
    for prec in cfg.precisions() {
        let e = cf_expand(&inst.series(prec)?, terms)?;
        if e.halt != Halt::PrecisionExhausted {
            let check = cf_expand(&inst.series(2 * prec)?, terms)?;
            let stable = check.word.all_letters().starts_with(&e.word.all_letters());
            let extra = json!({"doubling_check": {"precision": 2 * prec, "agrees": stable}});
            let code = if stable { EXIT_OK } else { EXIT_REFUTED };
            return Ok(Outcome::new("expand", expansion_report(source, p, &e, extra), code));
        }
        last = Some(e);
    }
    let e = last.expect("at least one precision");
    Ok(Outcome::new("expand", expansion_report(source, p, &e, json!({})), EXIT_PRECISION_CAP))
}

fn target(r: Resolved) -> Result<Target> {
    match r {
        Resolved::Series(s) => Ok(Target::Series(s)),
        Resolved::Rational { num, den } => Target::rational(num, den),
    }
}

/// Scan a named or file-given pair; instance series are refined until no minimum
/// sits on a precision floor.
pub(super) fn scan(theta: &str, phi: &str, degree: usize, cfg: RunConfig) -> Result<Outcome> {
    let mut last = None;
    for prec in cfg.precisions() {
        let (t, t_inst) = resolve(theta, prec)?;
        let (f, f_inst) = resolve(phi, prec)?;
        let r = crate::littlewood::scan(&target(t)?, &target(f)?, degree)?;
        let refinable = t_inst || f_inst;
        let report = json!({"theta": theta, "phi": phi, "precision": prec, "scan": r});
        if !r.upper_bound || !refinable {
            return Ok(Outcome::new("scan", report, EXIT_OK));
        }
        last = Some(report);
    }
    Ok(Outcome::new("scan", last.expect("at least one precision"), EXIT_PRECISION_CAP))
}

/// A random series with |F| < 1 and `prec` uniform coefficients.
pub fn random_series(rng: &mut ChaCha8Rng, field: PrimeField, prec: i64) -> LaurentSeries {
    let coeffs: Vec<u64> = (0..prec).map(|_| rng.gen_range(0..field.modulus())).collect();
    LaurentSeries::new(field, -1, coeffs, prec)
}

/// Scan a random pair and compare with the brute-force oracle over all nonzero q.
pub(super) fn scan_random(p: u64, degree: usize, seed: u64, prec: i64) -> Result<Outcome> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_series(&mut rng, field, prec);
    let b = random_series(&mut rng, field, prec);
    let r = crate::littlewood::scan(&Target::Series(a.clone()), &Target::Series(b.clone()), degree)?;
    let o = oracle_scan(&a, &b, degree);
    let agrees = (&r.product1.value, &r.product1.argmin, &r.product2.value, &r.product2.argmin)
        == (&o.product1, &o.argmin1, &o.product2, &o.argmin2);
    let report = json!({"pair": "random", "seed": seed, "theta": a, "phi": b, "scan": r, "oracle": o, "oracle_agrees": agrees});
    Ok(Outcome::new("scan", report, if agrees { EXIT_OK } else { EXIT_REFUTED }))
}

/// Θ normalized to [0; a_1, a_2, …] with enough letters and precision for the builder.
pub struct ConstructInput {
    pub builder: PhiBuilder,
    pub theta: LaurentSeries,
    /// a_0 removed from Θ, when nonzero.
    pub subtracted: Poly,
    pub witness: BadWitness,
    pub precision: i64,
}

/// Expand Θ with precision doubling until the stage-J builder fits; M is the largest
/// letter degree seen, and the gauge fixes the n_j.
pub fn prepare_construct(inst: &Instance, gauge: &GaugeFunction, stages: usize, t: &TChoice, cfg: RunConfig) -> Result<std::result::Result<ConstructInput, i64>> {
    if stages < 2 {
        return Err(Error::Invalid("at least two stages are required".into()));
    }
    for prec in cfg.precisions() {
        let s = inst.series(prec)?;
        let e = cf_expand(&s, usize::MAX)?;
        let witness = bad_witness(&e.word, e.word.tail.len());
        let m = witness.max_quotient_degree.max(1) as u32;
        let ns = choose_n_sequence(gauge, m, stages)?;
        let builder = match PhiBuilder::new(e.word.tail.clone(), m, ns, t.clone()) {
            Ok(b) => b,
            Err(Error::InsufficientTheta { .. }) => continue,
            Err(err) => return Err(err),
        };
        let need = required_theta_precision(&builder);
        if need > prec {
            continue;
        }
        let subtracted = e.word.a0.clone();
        let theta = s.sub(&LaurentSeries::from_poly(&subtracted, prec));
        return Ok(Ok(ConstructInput { builder, theta, subtracted, witness, precision: prec }));
    }
    Ok(Err(cfg.prec_cap))
}

pub(super) fn construct(
    theta_id: &str,
    gauge: &str,
    stages: usize,
    t_bits: Option<&str>,
    relation_degree: usize,
    relation_precision: i64,
    cfg: RunConfig,
) -> Result<Outcome> {
    let inst = lookup(theta_id)?;
    let g = GaugeFunction::parse(gauge)?;
    let t = match t_bits {
        None => TChoice::Default,
        Some(bits) => TChoice::Bits(
            bits.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("t bits must be 0 or 1, got {bits:?}"))),
                })
                .collect::<Result<_>>()?,
        ),
    };
    let input = match prepare_construct(&inst, &g, stages, &t, cfg)? {
        Ok(i) => i,
        Err(cap) => {
            let report = json!({"theta": theta_id, "gauge": gauge, "stages": stages, "precision_cap": cap});
            return Ok(Outcome::new("construct", report, EXIT_PRECISION_CAP));
        }
    };
    let b = &input.builder;
    let eq = verify_eq21(&input.theta, b, &g)?;
    let phi_word = build_phi(b, true);
    let relation_prec = relation_precision + 2 * relation_degree as i64 + 2;
    let phi = cf_eval(&phi_word, relation_prec)?.series;
    let relation = linear_relation_search(&input.theta, &phi, relation_degree, relation_precision);
    let report = json!({
        "theta": theta_id,
        "gauge": gauge,
        "stages": stages,
        "subtracted_a0": input.subtracted,
        "expansion_precision": input.precision,
        "bad_witness": input.witness,
        "max_degree": b.max_degree,
        "n_seq": b.n_seq,
        "m_seq": b.m_seq,
        "t_seq": b.t_seq,
        "phi_letters": phi_word.tail.len(),
        "checkpoints": eq,
        "relation_search": {"degree": relation_degree, "precision": relation_precision, "relation": relation},
    });
    let ok = eq.all_hold() && relation.is_none();
    Ok(Outcome::new("construct", report, if ok { EXIT_OK } else { EXIT_REFUTED }))
}

/// Lengths computed from the generated words next to the closed forms, for each n.
#[derive(serde::Serialize)]
pub struct LengthRow {
    pub n: u32,
    pub u_len: usize,
    pub v_len: usize,
    pub u_closed_form: usize,
    pub v_closed_form: usize,
    /// The ratio condition used for this family.
    pub condition: bool,
}

impl LengthRow {
    pub fn matches(&self) -> bool {
        self.u_len == self.u_closed_form && self.v_len == self.v_closed_form && self.condition
    }
}

pub struct CertifyData {
    pub certificate: ConditionCertificate,
    pub lengths: Vec<LengthRow>,
    pub family: &'static str,
}

impl CertifyData {
    pub fn holds(&self) -> bool {
        self.certificate.satisfied && self.lengths.iter().all(LengthRow::matches)
    }

    pub fn report(&self) -> Value {
        json!({"family": self.family, "certificate": self.certificate, "lengths": self.lengths})
    }
}

fn parse_arg(id: &str, name: &str) -> Option<u64> {
    id.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

/// The palindrome or periodic-block certificate for n = 2..=n_max (even n only
/// for the families whose blocks are defined at even n).
pub fn certify_data(id: &str, condition: Condition, n_max: u32) -> Result<CertifyData> {
    if n_max < 2 {
        return Err(Error::Invalid("--n-max must be at least 2".into()));
    }
    let even: Vec<u32> = (2..=n_max).filter(|n| n % 2 == 0).collect();
    match (id, condition) {
        ("mills-robbins", Condition::Palindromic) => {
            let pairs: Vec<(Word, Word)> = (2..=n_max).map(mills_robbins_uv).collect();
            let window = pairs.iter().map(|(u, v)| u.len() + v.len()).max().unwrap_or(0);
            let certificate = certify_palindromic(&mills_robbins_word(window), 0, &pairs)?;
            let lengths = (2..=n_max)
                .zip(&pairs)
                .map(|(n, (u, v))| LengthRow {
                    n,
                    u_len: u.len(),
                    v_len: v.len(),
                    u_closed_form: 3usize.pow(n),
                    v_closed_form: 3usize.pow(n + 1) - 2,
                    condition: 2 * v.len() > 5 * u.len(),
                })
                .collect();
            Ok(CertifyData { certificate, lengths, family: "mills-robbins" })
        }
        (_, Condition::Palindromic) if parse_arg(id, "lasjaunias").is_some() => {
            let k = parse_arg(id, "lasjaunias").unwrap() as usize;
            let pairs: Vec<(Word, Word)> = even.iter().map(|&n| lasjaunias_uv(k, n)).collect();
            let window = pairs.iter().map(|(u, v)| u.len() + v.len()).max().unwrap_or(0);
            let certificate = certify_palindromic(&lasjaunias_word(k, window), 1, &pairs)?;
            let lengths = even
                .iter()
                .zip(&pairs)
                .map(|(&n, (u, v))| LengthRow {
                    n,
                    u_len: u.len(),
                    v_len: v.len(),
                    u_closed_form: ((k + 2) * 3usize.pow(n - 1) - k) / 2,
                    v_closed_form: 5 * (k + 2) * 3usize.pow(n - 1) - 2,
                    condition: v.len() >= 3 * u.len() + 3,
                })
                .collect();
            Ok(CertifyData { certificate, lengths, family: "lasjaunias" })
        }
        (_, _) if parse_arg(id, "theta-p").is_some() => {
            let p = parse_arg(id, "theta-p").unwrap();
            let pairs = even.iter().map(|&n| theta_p_uv(p, n)).collect::<Result<Vec<_>>>()?;
            let window = pairs.iter().map(|(u, v)| u.len() + v.len() + 1).max().unwrap_or(0);
            let word = theta_p_word(p, window)?;
            let pu = p as usize;
            if condition == Condition::Palindromic {
                let certificate = certify_palindromic(&word, 0, &pairs)?;
                let lengths = even
                    .iter()
                    .zip(&pairs)
                    .map(|(&n, (u, v))| LengthRow {
                        n,
                        u_len: u.len(),
                        v_len: v.len(),
                        u_closed_form: 1 + 2 * (pu.pow(n) - 1) / (pu - 1),
                        v_closed_form: pu.pow(n) - 2,
                        condition: 2 * v.len() >= 5 * u.len(),
                    })
                    .collect();
                Ok(CertifyData { certificate, lengths, family: "theta-p" })
            } else {
                let us: Vec<Word> = pairs.iter().map(|(u, _)| u.clone()).collect();
                let ns: Vec<usize> = even.iter().map(|&n| (pu.pow(n) - 1) / 2).collect();
                let v = theta_p_v3(p)?;
                let certificate = certify_periodic(&word, &us, &v, &ns)?;
                let lengths = even
                    .iter()
                    .zip(&us)
                    .map(|(&n, u)| {
                        let block = theta_p_l3(p, n).expect("valid p");
                        LengthRow {
                            n,
                            u_len: u.len(),
                            v_len: block.len(),
                            u_closed_form: 1 + 2 * (pu.pow(n) - 1) / (pu - 1),
                            v_closed_form: pu.pow(n) - 1,
                            condition: 2 * block.len() >= 3 * u.len(),
                        }
                    })
                    .collect();
                Ok(CertifyData { certificate, lengths, family: "theta-p-periodic" })
            }
        }
        _ => Err(Error::UnknownId(format!("{id} ({condition:?})"))),
    }
}

/// Palindromic checkpoints of [0; Ω_∞] through Ω_{n_max}, with the exponent scan.
pub fn buck_robbins_checkpoints(n_max: u32) -> Result<(CheckpointSet, usize)> {
    let on = omega_len(n_max as usize);
    let word = buck_robbins_word(omega_len(n_max as usize + 1));
    let deg: i64 = word.tail.iter().take(on + 1).map(|l| l.deg()).sum();
    Ok((palindrome_checkpoints(&word, 2 * deg + 8)?, on))
}

pub(super) fn certify(id: &str, condition: Condition, n_max: u32) -> Result<Outcome> {
    if id == "buck-robbins" {
        let (set, on) = buck_robbins_checkpoints(n_max)?;
        let within: Vec<&Checkpoint> = set.checkpoints.iter().filter(|c| c.n <= on).collect();
        let holds = within.iter().all(|c| c.theta_line && c.inverse_line && c.product_line);
        let report = json!({"family": "buck-robbins", "omega_len": on, "checkpoints": within, "all_hold": holds});
        return Ok(Outcome::new("certify", report, if holds { EXIT_OK } else { EXIT_REFUTED }));
    }
    let data = certify_data(id, condition, n_max)?;
    Ok(Outcome::new("certify", data.report(), if data.holds() { EXIT_OK } else { EXIT_REFUTED }))
}
