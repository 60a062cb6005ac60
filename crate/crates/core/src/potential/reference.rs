//! Human- and machine-readable description of the family catalog.

use super::Family;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Formulas {
    pub potential: &'static str,
    pub energy: &'static str,
    pub mapping: &'static str,
    pub domain: &'static str,
    pub threshold: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantInfo {
    pub template: &'static str,
    #[serde(flatten)]
    pub formulas: Formulas,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyInfo {
    pub family: Family,
    pub complex: bool,
    pub parameters: &'static str,
    pub hyperbolic: VariantInfo,
    pub trig: Option<VariantInfo>,
    #[serde(skip_serializing_if = "str::is_empty")]
    pub notes: &'static str,
}

const KL_HYP: &str = "k = (1 + |b - 2N|)/2, l = (|b + 2N| - 1)/2, j_n = (l - k - 1)/2 - n, bound while l - k - 2n > 0";
const KL_TRIG: &str = "k = (1 + |b - 2N|)/2, l = (1 + |b + 2N|)/2, j_n = (k + l - 1)/2 + n";

pub fn formulas(family: Family, trig: bool) -> Formulas {
    let f = |potential, energy, mapping, domain, threshold| Formulas { potential, energy, mapping, domain, threshold };
    match (family, trig) {
        (Family::Coulomb, _) => f(
            "j(j+1)/(2u^2) - Ze^2/u",
            "E = -(Ze^2)^2/(2N^2)",
            "N_n = n + j + 1, j fixed, b_n = Ze^2/N_n",
            "u in (0, 60(1 + j)^2/Ze^2]",
            "0",
        ),
        (Family::Oscillator, _) => f(
            "(3 + 16 j(j+1))/(8u^2) + b^2 u^2/2",
            "E = 2bN",
            "N_n = n + j + 1, j fixed (j = -1/4 removes the centrifugal term)",
            "u in (0, 12/sqrt(b)]",
            "none (confining)",
        ),
        (Family::Morse, _) => f(
            "N b alpha^2 e^{-alpha u} + b^2 alpha^2/2 e^{-2 alpha u}",
            "E = -(alpha^2/8)(1 + 2j)^2",
            "j_n = |N| - n - 1, bound while n < |N| - 1/2",
            "alpha u in [y0 - 3, y0 + 30], y0 = ln(|b|/|N|)",
            "0",
        ),
        (Family::PoschlTeller, false) => f(
            "alpha^2/8((b-2N)^2-1) csch^2(alpha u) - alpha^2/8((b+2N)^2-1) sech^2(alpha u)",
            "E = -(alpha^2/2)(1 + 2j)^2",
            KL_HYP,
            "u in (0, 30/alpha]",
            "0",
        ),
        (Family::PoschlTeller, true) => f(
            "alpha^2/8((b-2N)^2-1) csc^2(alpha u) + alpha^2/8((b+2N)^2-1) sec^2(alpha u)",
            "E = (alpha^2/2)(1 + 2j)^2",
            KL_TRIG,
            "u in (0, pi/(2 alpha))",
            "none (confining)",
        ),
        (Family::GenPoschlTeller, false) => f(
            "alpha^2/8(b^2+4N^2-1) csch^2(alpha u) - alpha^2/2 bN coth(alpha u) csch(alpha u)",
            "E = -(alpha^2/8)(1 + 2j)^2",
            KL_HYP,
            "u in (0, 60/alpha]",
            "0",
        ),
        (Family::GenPoschlTeller, true) => f(
            "alpha^2/8(b^2+4N^2-1) csc^2(alpha u) - alpha^2/2 bN cot(alpha u) csc(alpha u)",
            "E = (alpha^2/8)(1 + 2j)^2",
            KL_TRIG,
            "u in (0, pi/alpha)",
            "none (confining)",
        ),
        (Family::Scarf, false) => f(
            "alpha^2/8(b^2-4N^2+1) sech^2(alpha u) - alpha^2/2 bN sech(alpha u) tanh(alpha u)",
            "E = -(alpha^2/8)(1 + 2j)^2",
            "j_n = |N| - n - 1, bound while n < |N| - 1/2",
            "u in [-30/alpha, 30/alpha]",
            "0",
        ),
        (Family::Scarf, true) => f(
            "alpha^2/8(b^2+4N^2-1) sec^2(alpha u) + alpha^2/2 bN sec(alpha u) tan(alpha u)",
            "E = (alpha^2/8)(1 + 2j)^2",
            "k = (1 + |b + 2N|)/2, l = (1 + |b - 2N|)/2, j_n = (k + l - 1)/2 + n",
            "u in (-pi/(2 alpha), pi/(2 alpha))",
            "none (confining)",
        ),
        (Family::PtScarf, _) => f(
            "-alpha^2/8(b^2+4N^2-1) sech^2(alpha u) + i alpha^2/2 bN sech(alpha u) tanh(alpha u)",
            "E = -(alpha^2/8)(1 + 2j)^2",
            "j_n = |N| - n - 1, bound while n < |N| - 1/2 (analytic only)",
            "u in [-30/alpha, 30/alpha]",
            "none (complex)",
        ),
        (Family::Eckart, false) => f(
            "-alpha^2/2 bN coth(alpha u) + alpha^2/2 j(j+1) csch^2(alpha u)",
            "E = -(alpha^2/8)(b^2 + 4N^2)",
            "kappa = bN fixed, N_n = n + j + 1, b_n = kappa/N_n, bound while N_n^2 < kappa/2",
            "u in (0, min(60/alpha, 25/k)], k the decay rate of the weakest requested level",
            "-alpha^2 kappa/2",
        ),
        (Family::Eckart, true) => f(
            "alpha^2/2 bN cot(alpha u) + alpha^2/2 j(j+1) csc^2(alpha u)",
            "E = -(alpha^2/8)(b^2 - 4N^2)",
            "kappa = bN fixed, N_n = n + j + 1, b_n = kappa/N_n",
            "u in (0, pi/alpha)",
            "none (confining)",
        ),
        (Family::Hulthen, _) => f(
            "(j(j+1) - bN/2) alpha^2 e^{-alpha u}/(2(1 - e^{-alpha u})) + j(j+1) alpha^2 e^{-2 alpha u}/(2(1 - e^{-alpha u})^2)",
            "E = -(alpha^2/32)(b - 2N)^2",
            "kappa = bN fixed, N_n = n + j + 1, b_n = kappa/N_n, bound while b_n > 2N_n",
            "u in (0, min(60/alpha, 25/k)], k the decay rate of the weakest requested level",
            "0",
        ),
        (Family::RosenMorse, false) => f(
            "-alpha^2/2 bN tanh(alpha u) - alpha^2/2 j(j+1) sech^2(alpha u)",
            "E = -(alpha^2/8)(b^2 + 4N^2)",
            "kappa = bN fixed, N_n = j - n, b_n = kappa/N_n, bound while N_n > 0 and |kappa| < 2 N_n^2",
            "u in [-30/alpha, 30/alpha]",
            "-alpha^2 |kappa|/2",
        ),
        (Family::RosenMorse, true) => f(
            "-alpha^2/2 bN tan(alpha u) + alpha^2/2 j(j+1) sec^2(alpha u)",
            "E = -(alpha^2/8)(b^2 - 4N^2)",
            "kappa = bN fixed, N_n = n + j + 1, b_n = kappa/N_n",
            "u in (-pi/(2 alpha), pi/(2 alpha))",
            "none (confining)",
        ),
    }
}

fn template(family: Family, trig: bool) -> &'static str {
    match (family, trig) {
        (Family::Coulomb, _) => "identity r = u, a = 0, lambda = (1, 0, 0)",
        (Family::Oscillator, _) => "half-square r = u^2/2, a = 0, lambda = (0, 1/2, 0)",
        (Family::Morse, _) => "exponential r = e^{-alpha u}, a = 0, lambda = (0, 0, 1/alpha^2)",
        (Family::PoschlTeller, false) => "exponential r = e^{-2 alpha u}, a = 1",
        (Family::PoschlTeller, true) => "oscillating r = e^{-2i alpha u}, a = 1",
        (Family::GenPoschlTeller, false) => "exponential r = e^{-alpha u}, a = 1",
        (Family::GenPoschlTeller, true) => "oscillating r = e^{-i alpha u}, a = 1",
        (Family::Scarf, false) => "exponential r = e^{-alpha u}, a = -1",
        (Family::Scarf, true) => "oscillating r = -i e^{-i alpha u}, a = 1",
        (Family::PtScarf, _) => "signed-exponential r = -i e^{-alpha u}, a = 1",
        (Family::Eckart, false) => "coth-half r = coth(alpha u/2), a = 1",
        (Family::Eckart, true) => "cot-half r = cot(alpha u/2), a = -1",
        (Family::Hulthen, _) => "coth-quarter r = coth(alpha u/4), a = 1",
        (Family::RosenMorse, false) => "coth-shifted r = coth(alpha u/2 + i pi/4), a = 1",
        (Family::RosenMorse, true) => "cot-shifted r = cot(alpha u/2 + pi/4), a = -1",
    }
}

fn parameters(family: Family) -> &'static str {
    match family {
        Family::Coulomb => "ze2 > 0 (default 1), j >= 0 (default 0)",
        Family::Oscillator => "b > 0, j >= -1/4 (default -1/4)",
        Family::Morse => "alpha > 0, bN < 0, |N| > 1/2",
        Family::PoschlTeller | Family::GenPoschlTeller => {
            "alpha > 0, |b - 2N| >= 1 (trig: also |b + 2N| >= 1), at least one bound level"
        }
        Family::Scarf => "alpha > 0, |N| > 1/2 (trig: |b - 2N| >= 1 and |b + 2N| >= 1)",
        Family::PtScarf => "alpha > 0, |N| > 1/2",
        Family::Eckart => "alpha > 0, bN > 0, j >= 0 (default 0), at least one bound level",
        Family::Hulthen => "alpha > 0, bN > 0, j >= 0 (default 0), at least one bound level",
        Family::RosenMorse => "alpha > 0, j > 0 (required), at least one bound level",
    }
}

fn notes(family: Family) -> &'static str {
    match family {
        Family::PoschlTeller => {
            "energy scale alpha^2/2 against alpha^2/8 for gen-poschl-teller: the template decays at rate 2 alpha, \
             so both agree with the master formula"
        }
        Family::PtScarf => "complex potential: analytic evaluation only, excluded from numeric validation",
        Family::Eckart => "energy carries 4N^2, which the master formula requires; isospectral with rosen-morse",
        _ => "",
    }
}

/// One entry per family.
pub fn family_reference() -> Vec<FamilyInfo> {
    Family::ALL
        .iter()
        .map(|&family| FamilyInfo {
            family,
            complex: family.is_complex(),
            parameters: parameters(family),
            hyperbolic: VariantInfo { template: template(family, false), formulas: formulas(family, false) },
            trig: family
                .has_trig()
                .then(|| VariantInfo { template: template(family, true), formulas: formulas(family, true) }),
            notes: notes(family),
        })
        .collect()
}
