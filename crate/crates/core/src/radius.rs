//! Closed-form decoding radii and parameter checks. All radii are floors of the rational bounds.

/// Code parameters for the radius formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: i64,
    pub g: i64,
    pub deg_g: i64,
    pub ell: i64,
    pub t: Option<i64>,
    pub deg_f: Option<i64>,
}

impl CodeParams {
    pub fn new(n: i64, g: i64, deg_g: i64, ell: i64) -> CodeParams {
        CodeParams {
            n,
            g,
            deg_g,
            ell,
            t: None,
            deg_f: None,
        }
    }

    pub fn with_t(self, t: i64) -> CodeParams {
        CodeParams { t: Some(t), ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SudanVariant {
    Basic,
    Improved,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `⌊(d* − 1)/2⌋` with `d* = n − deg G`.
pub fn half_designed(n: i64, deg_g: i64) -> i64 {
    floor_div(n - deg_g - 1, 2)
}

/// `⌊(d* − 1 − g)/2⌋`.
pub fn basic_radius(n: i64, g: i64, deg_g: i64) -> i64 {
    floor_div(n - deg_g - 1 - g, 2)
}

/// Sudan-type radius `(2nℓ − ℓ(ℓ+1)deg G − 2)/(2(ℓ+1))` minus `g` (basic) or `ℓg/(ℓ+1)` (improved).
pub fn sudan_radius(n: i64, g: i64, deg_g: i64, ell: i64, variant: SudanVariant) -> i64 {
    let base = 2 * n * ell - ell * (ell + 1) * deg_g - 2;
    let penalty = match variant {
        SudanVariant::Basic => 2 * (ell + 1) * g,
        SudanVariant::Improved => 2 * ell * g,
    };
    floor_div(base - penalty, 2 * (ell + 1))
}

/// `⌊(2ℓn − ℓ(ℓ+1)deg G − 2ℓ)/(2(ℓ+1))⌋`.
pub fn power_radius(n: i64, deg_g: i64, ell: i64) -> i64 {
    floor_div(2 * ell * n - ell * (ell + 1) * deg_g - 2 * ell, 2 * (ell + 1))
}

/// One checked condition with the evaluated slack (`holds` iff `slack ≥ 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub slack: i64,
    pub holds: bool,
}

fn cond(name: &'static str, slack: i64) -> Condition {
    Condition {
        name,
        slack,
        holds: slack >= 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamReport {
    pub conditions: Vec<Condition>,
}

impl ParamReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Checks the parameter conditions of the power decoder.
///
/// Direct forms, with `t` defaulting to the power radius and `deg F` to `t + 2g`:
/// (i) `t` within the power radius, (ii) `deg(F + ℓG) < n`, (iii) `deg F ≤ d* − g − 1`,
/// (iv) the radius for `ℓ` exceeds the radius for `ℓ − 1`, (v) `deg G ≥ g − 1`.
/// The developed forms (ii′)–(iv′) are the same constraints after substituting `t` and `deg F`.
/// Also reported: `t ≤ d* − 3g − 1`.
pub fn validate_params(p: &CodeParams) -> ParamReport {
    let (n, g, dg, l) = (p.n, p.g, p.deg_g, p.ell);
    let d_star = n - dg;
    let t = p.t.unwrap_or_else(|| power_radius(n, dg, l));
    let deg_f = p.deg_f.unwrap_or(t + 2 * g);
    // radius(ℓ−1) < radius(ℓ) as exact rationals, cross-multiplied
    let prev_num = 2 * (l - 1) * n - l * (l - 1) * dg - 2 * (l - 1);
    let cur_num = 2 * l * n - l * (l + 1) * dg - 2 * l;
    let iv_slack = if l >= 1 {
        cur_num * 2 * l - prev_num * 2 * (l + 1) - 1
    } else {
        -1
    };
    ParamReport {
        conditions: vec![
            cond("ell >= 1", l - 1),
            cond("i: t <= power radius", power_radius(n, dg, l) - t),
            cond("ii: deg(F + ell G) < n", n - 1 - (deg_f + l * dg)),
            cond("iii: deg F <= d* - g - 1", d_star - g - 1 - deg_f),
            cond("iv: radius(ell-1) < radius(ell)", iv_slack),
            cond("v: deg G >= g - 1", dg - (g - 1)),
            cond(
                "ii': 2n - ell(ell+1)degG - 4g(ell+1) >= 0",
                2 * n - l * (l + 1) * dg - 4 * g * (l + 1),
            ),
            cond(
                "iii': 2n + (ell-2)(ell+1)degG - 6g ell - 6g - 2 >= 0",
                2 * n + (l - 2) * (l + 1) * dg - 6 * g * l - 6 * g - 2,
            ),
            cond(
                "iv': 2n - ell(ell+1)degG - 2(ell^2+ell+1) >= 0",
                2 * n - l * (l + 1) * dg - 2 * (l * l + l + 1),
            ),
            cond("t <= d* - 3g - 1", d_star - 3 * g - 1 - t),
        ],
    }
}
