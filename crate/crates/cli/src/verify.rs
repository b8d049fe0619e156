//! Check-by-check verification of a serialized datum, tolerant of data that
//! violate the classification so that each failing identity is reported.

use num_traits::Zero;
use serde::Serialize;

use simple_bialgebras::bdtriple::BDTriple;
use simple_bialgebras::involution::Involution;
use simple_bialgebras::manin::{cobracket_matches, manin_triple};
use simple_bialgebras::parameter::{check_compatibility, matrix_from_strings, satisfies_reality, ContinuousParameter, RealityKind};
use simple_bialgebras::rmatrix::{build_r0_twisted, t_class, BialgebraDatum, BialgebraDatumJson, TClass};
use simple_bialgebras::rootsystem::{build_root_system, RootSystem};
use simple_bialgebras::scalar::{from_rational, parse_scalar, rat, GaussianRational};
use simple_bialgebras::tensor::{apply_semilinear_pair, cybe_sparse, Tensor2};
use simple_bialgebras::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "type")]
    pub simple_type: String,
    pub bd: String,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

struct Parsed {
    rs: RootSystem,
    sigma: Involution,
    bd: BDTriple,
    lambda: ContinuousParameter,
    t: GaussianRational,
    twist: Vec<GaussianRational>,
    r0: Tensor2,
    r: Tensor2,
}

fn parse(json: &BialgebraDatumJson) -> Result<Parsed> {
    let rs = build_root_system(json.simple_type);
    let sigma = Involution::from_json(&json.sigma, &rs)?;
    let bd = BDTriple::from_json(&json.bd, &rs)?;
    let lambda = ContinuousParameter::new(matrix_from_strings(&json.lambda)?);
    let t = parse_scalar(&json.t)?;
    let twist = json.twist.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
    let r0 = Tensor2::try_from(&json.r0)?;
    let r = Tensor2::try_from(&json.r)?;
    for x in [&r0, &r] {
        if x.dim() != rs.dim() {
            return Err(simple_bialgebras::Error::DimensionMismatch { expected: rs.dim(), found: x.dim() });
        }
    }
    if lambda.lambda().rows() != rs.rank() || lambda.lambda().cols() != rs.rank() || twist.len() != rs.rank() {
        return Err(simple_bialgebras::Error::DimensionMismatch { expected: rs.rank(), found: lambda.lambda().rows() });
    }
    Ok(Parsed { rs, sigma, bd, lambda, t, twist, r0, r })
}

/// Parse errors are returned as `Err`; failed identities are reported.
pub fn verify_json(json: &BialgebraDatumJson) -> Result<VerificationReport> {
    let p = parse(json)?;
    let rs = &p.rs;
    let alg = rs.structure_constants();
    let row = p.sigma.table_row().expect("canonical");
    let mu = p.sigma.mu().expect("canonical");
    let omega = rs.casimir();
    let half_t = &p.t * from_rational(rat(1, 2));

    let symmetric = p.lambda.satisfies_symmetric_condition(rs);
    let bd_condition = p.lambda.satisfies_bd_condition(rs, &p.bd);
    let compatible = check_compatibility(&p.sigma, &p.bd).is_ok();
    let expected_class = if row.t_is_real() { TClass::RealPositive } else { TClass::ImaginaryPositive };
    let t_ok = t_class(&p.t) == Some(expected_class);
    let reality = satisfies_reality(&p.lambda, RealityKind::for_row(row), mu);
    let formula = symmetric
        && bd_condition
        && !p.t.is_zero()
        && build_r0_twisted(rs, &p.bd, &p.lambda, &p.t, Some(&p.twist)).is_ok_and(|x| x == p.r0);
    let antisymmetric = p.r0.is_antisymmetric();
    let casimir = p.r.add(&p.r.flip()) == omega.scale(&p.t);
    let split = p.r == p.r0.add(&omega.scale(&half_t));
    let cybe = cybe_sparse(&p.r, alg)?.is_empty();
    let fixed = apply_semilinear_pair(p.sigma.linear_part(), &p.r0)? == p.r0;
    let mut checks = vec![
        Check { name: "lambda_symmetric_part_is_omega0", pass: symmetric },
        Check { name: "lambda_bd_condition", pass: bd_condition },
        Check { name: "triple_compatible_with_sigma", pass: compatible },
        Check { name: "t_class_matches_sigma", pass: t_ok },
        Check { name: "lambda_reality_condition", pass: reality },
        Check { name: "r0_matches_bd_formula", pass: formula },
        Check { name: "r0_antisymmetric", pass: antisymmetric },
        Check { name: "r_plus_r21_is_t_omega", pass: casimir },
        Check { name: "r_is_r0_plus_half_t_omega", pass: split },
        Check { name: "cybe", pass: cybe },
        Check { name: "r0_sigma_fixed", pass: fixed },
    ];
    let prior = checks.iter().all(|c| c.pass);
    let manin = prior
        && BialgebraDatum::new(rs, p.sigma.clone(), p.bd.clone(), p.lambda.clone(), p.t.clone()).is_ok_and(|d| {
            manin_triple(rs, &d).is_ok_and(|m| m.verify().all() && cobracket_matches(rs, &d, &m).unwrap_or(false))
        });
    checks.push(Check { name: "manin_triple", pass: manin });
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { simple_type: json.simple_type.to_string(), bd: p.bd.arrows(), checks, all_pass })
}
