//! Machine-readable records of the six Jacobian fibrations and the
//! verification pipeline over them.
//!
//! The catalog lives in `catalog.txt`, a sectioned key = value file, so the
//! engine can be pointed at other surfaces. Wherever the source data prints
//! two variants of the same object, both are stored and the discrepancy is
//! settled computationally: equations by their fiber configurations,
//! parameters by the change-of-variables identity, points by curve
//! membership. Every resolution lands in the report notes.

use std::fmt;
use std::sync::Arc;

use crate::ellcurve::{CurvePoint, WeierstrassCurve};
use crate::exactalg::{irreducible_factor, Field, NumberField, QRatFunc, Rat};
use crate::kodaira::{euler_sum, fiber_configuration, FiberData, KodairaType, Place};
use crate::mwlattice::{
    determinant_check, height, shioda_tate_check, torsion_injection_check, torsion_verify, MWClaim,
};
use crate::parse::{parse_curve_literal, parse_ratfunc, parse_x3_nf, parse_x3_q};
use crate::x3field::{mpoly, MPoly, X3Elem};

const CATALOG_TEXT: &str = include_str!("catalog.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantSource {
    Table,
    Text,
}

impl fmt::Display for VariantSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantSource::Table => write!(f, "table"),
            VariantSource::Text => write!(f, "text"),
        }
    }
}

/// A point with a claimed order (torsion) or claimed height (free).
#[derive(Debug, Clone)]
pub struct ClaimedPoint {
    pub point: CurvePoint<Rat>,
    pub order: u32,
}

#[derive(Debug, Clone)]
pub struct FibrationRecord {
    pub id: u8,
    pub field: Option<Arc<NumberField>>,
    /// Elliptic parameter variants as X3 expressions, table form first.
    pub parameter_variants: Vec<(VariantSource, String)>,
    pub equation_variants: Vec<(VariantSource, WeierstrassCurve<Rat>)>,
    pub x_expr: String,
    pub y_expr: String,
    /// Expression substituted for `u` inside X and Y; `None` means the
    /// resolved elliptic parameter itself (the catalog writes
    /// `u = parameter`).
    pub u_expr: Option<String>,
    /// Claimed configuration, expanded into (type, place) pairs.
    pub expected_fibers: Vec<(KodairaType, Place)>,
    pub mw_rank: u32,
    pub torsion_orders: Vec<u32>,
    /// Torsion point lists; the first entry is the primary printed list.
    pub torsion_variants: Vec<(VariantSource, Vec<ClaimedPoint>)>,
    /// Free generator with claimed height, plus printed alternatives.
    pub free_gen: Option<(CurvePoint<Rat>, Rat)>,
    pub free_gen_text: Option<CurvePoint<Rat>>,
    /// Negation relation: -gen equals this printed point.
    pub free_negation: Option<CurvePoint<Rat>>,
    /// Second free point data: the misprinted pair and the group-law rule
    /// "second = S - gen" with S this point.
    pub free2_text: Option<CurvePoint<Rat>>,
    pub free2_derive_sub: Option<CurvePoint<Rat>>,
    /// This fibration is a quadratic twist of `of` by `d`.
    pub twist_of: Option<(u8, QRatFunc)>,
}

// ---------------------------------------------------------------------------
// catalog file parsing
// ---------------------------------------------------------------------------

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c == sep && depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_point(s: &str) -> Result<CurvePoint<Rat>, String> {
    let s = s.trim();
    if s == "O" {
        return Ok(CurvePoint::Infinity);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected (x; y), got {s}"))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 2 {
        return Err(format!("point needs two components: {s}"));
    }
    Ok(CurvePoint::affine(
        parse_ratfunc(parts[0], "u")?,
        parse_ratfunc(parts[1], "u")?,
    ))
}

fn parse_claimed_points(s: &str) -> Result<Vec<ClaimedPoint>, String> {
    let mut out = Vec::new();
    for item in split_top_level(s, ',') {
        let (pt, ord) = item
            .rsplit_once(':')
            .ok_or_else(|| format!("expected (x; y) : order in {item}"))?;
        out.push(ClaimedPoint {
            point: parse_point(pt)?,
            order: ord.trim().parse().map_err(|_| "bad order")?,
        });
    }
    Ok(out)
}

fn parse_fibers(s: &str) -> Result<Vec<(KodairaType, Place)>, String> {
    let mut out = Vec::new();
    for item in split_top_level(s, ';') {
        let (ty, pos) = item
            .split_once(':')
            .ok_or_else(|| format!("expected TYPE : place in {item}"))?;
        let kodaira =
            KodairaType::parse(ty.trim()).ok_or_else(|| format!("bad Kodaira symbol {ty}"))?;
        let pos = pos.trim();
        if pos == "inf" {
            out.push((kodaira, Place::Infinity));
            continue;
        }
        let poly = crate::parse::parse_poly(pos, "u")?;
        for (factor, mult) in irreducible_factor(&poly) {
            if factor.degree() == Some(0) {
                continue;
            }
            if mult != 1 {
                return Err(format!("fiber position {pos} has a repeated factor"));
            }
            out.push((kodaira, Place::finite(factor)));
        }
    }
    Ok(out)
}

/// Parse the embedded catalog (or any text in the same format).
pub fn parse_catalog(text: &str) -> Result<Vec<FibrationRecord>, String> {
    let mut sections: Vec<(u8, Vec<(String, String)>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(head) = line.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or(format!("bad header line {lineno}"))?;
            let id: u8 = head
                .strip_prefix("fibration")
                .ok_or(format!("bad section {head}"))?
                .trim()
                .parse()
                .map_err(|_| format!("bad fibration id in {head}"))?;
            sections.push((id, Vec::new()));
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or(format!("expected key = value at line {}", lineno + 1))?;
        let section = sections
            .last_mut()
            .ok_or("key outside any [fibration] section")?;
        section.1.push((k.trim().to_string(), v.trim().to_string()));
    }

    let mut records = Vec::new();
    for (id, kvs) in sections {
        let get = |key: &str| -> Option<String> {
            kvs.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
        };
        let require = |key: &str| -> Result<String, String> {
            get(key).ok_or(format!("fibration {id}: missing key {key}"))
        };

        let field = match get("field") {
            None => None,
            Some(m) => {
                let modulus = crate::parse::parse_poly(&m, "a")?;
                Some(NumberField::new(modulus).map_err(|e| e.to_string())?)
            }
        };

        let mut parameter_variants = vec![(VariantSource::Table, require("parameter")?)];
        if let Some(alt) = get("parameter.text") {
            parameter_variants.push((VariantSource::Text, alt));
        }

        let mut equation_variants = vec![(
            VariantSource::Table,
            parse_curve_literal(&require("equation.table")?, None)?,
        )];
        if let Some(alt) = get("equation.text") {
            equation_variants.push((VariantSource::Text, parse_curve_literal(&alt, None)?));
        }

        let torsion_orders: Vec<u32> = {
            let raw = require("mw.torsion")?;
            raw.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| "bad torsion order".to_string()))
                .collect::<Result<_, _>>()?
        };

        let mut torsion_variants = Vec::new();
        if let Some(tor) = get("mw.tor") {
            torsion_variants.push((VariantSource::Text, parse_claimed_points(&tor)?));
        }
        if let Some(tor) = get("mw.tor.table") {
            torsion_variants.push((VariantSource::Table, parse_claimed_points(&tor)?));
        }

        let free_gen = match get("mw.free") {
            None => None,
            Some(s) => {
                let (pt, h) = s.rsplit_once(':').ok_or("mw.free needs (x; y) : height")?;
                let height = parse_ratfunc(h.trim(), "u")?
                    .to_rat()
                    .ok_or("claimed height must be rational")?;
                Some((parse_point(pt)?, height))
            }
        };

        let twist_of = match get("twist.of") {
            None => None,
            Some(s) => {
                let of: u8 = s.trim().parse().map_err(|_| "bad twist.of")?;
                let d = parse_ratfunc(&require("twist.d")?, "u")?;
                Some((of, d))
            }
        };

        records.push(FibrationRecord {
            id,
            field,
            parameter_variants,
            equation_variants,
            x_expr: require("X")?,
            y_expr: require("Y")?,
            u_expr: match require("u")?.as_str() {
                "parameter" => None,
                other => Some(other.to_string()),
            },
            expected_fibers: parse_fibers(&require("fibers")?)?,
            mw_rank: require("mw.rank")?.parse().map_err(|_| "bad rank")?,
            torsion_orders,
            torsion_variants,
            free_gen,
            free_gen_text: get("mw.free.text").map(|s| parse_point(&s)).transpose()?,
            free_negation: get("mw.free.negation")
                .map(|s| parse_point(&s))
                .transpose()?,
            free2_text: get("mw.free2.text").map(|s| parse_point(&s)).transpose()?,
            free2_derive_sub: get("mw.free2.derive_sub")
                .map(|s| parse_point(&s))
                .transpose()?,
            twist_of,
        });
    }
    records.sort_by_key(|r| r.id);
    Ok(records)
}

/// The embedded catalog of the six fibrations.
pub fn load_catalog() -> Result<Vec<FibrationRecord>, String> {
    parse_catalog(CATALOG_TEXT)
}

// ---------------------------------------------------------------------------
// verification operations
// ---------------------------------------------------------------------------

/// Human-readable configuration summary with degree-expanded counts, e.g.
/// `I12* + I3 + 3 I1`.
pub fn config_summary(config: &[FiberData]) -> String {
    let mut counts: Vec<(KodairaType, usize)> = Vec::new();
    for fd in config {
        let d = fd.place.degree();
        match counts.iter_mut().find(|(t, _)| *t == fd.kodaira) {
            Some((_, c)) => *c += d,
            None => counts.push((fd.kodaira, d)),
        }
    }
    counts.sort_by_key(|(t, _)| std::cmp::Reverse(t.euler()));
    counts
        .iter()
        .map(|(t, c)| {
            if *c == 1 {
                t.symbol()
            } else {
                format!("{c} {t}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn config_matches(config: &[FiberData], expected: &[(KodairaType, Place)]) -> bool {
    let mut a: Vec<((bool, usize, String), KodairaType)> = config
        .iter()
        .map(|f| (f.place.sort_key(), f.kodaira))
        .collect();
    let mut b: Vec<((bool, usize, String), KodairaType)> =
        expected.iter().map(|(t, p)| (p.sort_key(), *t)).collect();
    a.sort();
    b.sort();
    a == b
}

pub struct Resolved {
    pub source: VariantSource,
    pub curve: WeierstrassCurve<Rat>,
    pub config: Vec<FiberData>,
    pub notes: Vec<String>,
}

/// Pick the unique equation variant whose computed fiber configuration
/// matches the claimed one.
pub fn resolve_variant(rec: &FibrationRecord) -> Result<Resolved, String> {
    let mut matching: Vec<(VariantSource, WeierstrassCurve<Rat>, Vec<FiberData>)> = Vec::new();
    let mut notes = Vec::new();
    for (source, curve) in &rec.equation_variants {
        match fiber_configuration(curve) {
            Err(e) => notes.push(format!("equation ({source} variant) rejected: {e}")),
            Ok(config) => {
                if config_matches(&config, &rec.expected_fibers) {
                    matching.push((*source, curve.clone(), config));
                } else {
                    notes.push(format!(
                        "equation ({} variant) yields {}, contradicting the claimed configuration",
                        source,
                        config_summary(&config)
                    ));
                }
            }
        }
    }
    match matching.len() {
        1 => {
            let (source, curve, config) = matching.pop().unwrap();
            if rec.equation_variants.len() > 1 {
                notes.insert(
                    0,
                    format!(
                        "equation resolves to the {source} variant: {}",
                        curve.to_literal()
                    ),
                );
            }
            Ok(Resolved {
                source,
                curve,
                config,
                notes,
            })
        }
        0 => Err(format!(
            "fibration {}: no equation variant matches the claimed fibers ({})",
            rec.id,
            notes.join("; ")
        )),
        _ => Err(format!(
            "fibration {}: ambiguous resolution, several variants match",
            rec.id
        )),
    }
}

fn eval_at<K: Field>(f: &QRatFunc, u: &X3Elem<K>) -> Result<X3Elem<K>, String> {
    let n = f.num().eval_in(u, |c| X3Elem::from_rat(c));
    let d = f.den().eval_in(u, |c| X3Elem::from_rat(c));
    n.div(&d).map_err(|e| e.to_string())
}

fn residual_is_zero<K: Field>(
    curve: &WeierstrassCurve<Rat>,
    u: &X3Elem<K>,
    x: &X3Elem<K>,
    y: &X3Elem<K>,
) -> Result<bool, String> {
    let w = y
        .mul(y)
        .add(&eval_at(&curve.a1, u)?.mul(x).mul(y))
        .add(&eval_at(&curve.a3, u)?.mul(y))
        .sub(&x.pow(3))
        .sub(&eval_at(&curve.a2, u)?.mul(&x.mul(x)))
        .sub(&eval_at(&curve.a4, u)?.mul(x))
        .sub(&eval_at(&curve.a6, u)?);
    Ok(w.is_zero())
}

/// Does the change of variables (u, X, Y) of the record, with the given
/// parameter expression, satisfy the Weierstrass equation identically in
/// C(X3)?
pub fn change_holds(
    rec: &FibrationRecord,
    curve: &WeierstrassCurve<Rat>,
    param_expr: &str,
) -> Result<bool, String> {
    let param_expr = rec.u_expr.as_deref().unwrap_or(param_expr);
    match &rec.field {
        None => {
            let u = parse_x3_q(param_expr, &[])?;
            let x = parse_x3_q(&rec.x_expr, &[("u", u.clone())])?;
            let y = parse_x3_q(&rec.y_expr, &[("u", u.clone())])?;
            residual_is_zero(curve, &u, &x, &y)
        }
        Some(ctx) => {
            let u = parse_x3_nf(param_expr, ctx, &[])?;
            let x = parse_x3_nf(&rec.x_expr, ctx, &[("u", u.clone())])?;
            let y = parse_x3_nf(&rec.y_expr, ctx, &[("u", u.clone())])?;
            residual_is_zero(curve, &u, &x, &y)
        }
    }
}

/// Substitute the record's change of variables into the resolved equation
/// and test for the exact zero in C(X3), resolving the parameter variant in
/// the process.
pub fn verify_change_of_variables(
    rec: &FibrationRecord,
    curve: &WeierstrassCurve<Rat>,
) -> Result<(bool, Vec<String>), String> {
    let mut notes = Vec::new();
    let mut holding: Vec<VariantSource> = Vec::new();
    for (source, expr) in &rec.parameter_variants {
        if change_holds(rec, curve, expr)? {
            holding.push(*source);
        } else {
            notes.push(format!(
                "parameter ({source} variant) fails the change-of-variables identity"
            ));
        }
    }
    let ok = holding.len() == 1 || (holding.len() > 1 && rec.parameter_variants.len() == 1);
    if rec.parameter_variants.len() > 1 && holding.len() == 1 {
        let winner = rec
            .parameter_variants
            .iter()
            .find(|(s, _)| *s == holding[0])
            .unwrap();
        notes.insert(
            0,
            format!("parameter resolves to the {} form {}", holding[0], winner.1),
        );
    }
    Ok((ok && holding.len() == 1, notes))
}

/// Checks aggregated per fibration; `None` marks a check that does not
/// apply to this record.
#[derive(Debug, Clone, Default)]
pub struct Checks {
    pub fiber_config_ok: bool,
    pub euler_ok: bool,
    pub change_of_vars_ok: bool,
    pub torsion_ok: bool,
    pub heights_ok: bool,
    pub shioda_tate_ok: bool,
    pub determinant_ok: bool,
    pub torsion_injection_ok: bool,
    pub neighbor_ok: Option<bool>,
    pub twist_ok: Option<bool>,
}

impl Checks {
    pub fn pass(&self) -> bool {
        self.fiber_config_ok
            && self.euler_ok
            && self.change_of_vars_ok
            && self.torsion_ok
            && self.heights_ok
            && self.shioda_tate_ok
            && self.determinant_ok
            && self.torsion_injection_ok
            && self.neighbor_ok.unwrap_or(true)
            && self.twist_ok.unwrap_or(true)
    }
}

#[derive(Debug, Clone)]
pub struct FiberLine {
    pub place: String,
    pub kodaira: String,
    pub degree: usize,
    pub euler: u32,
}

#[derive(Debug, Clone)]
pub struct FibrationReport {
    pub id: u8,
    pub resolved_equation: String,
    pub fibers: Vec<FiberLine>,
    pub fiber_summary: String,
    pub mw_rank: u32,
    pub torsion_orders: Vec<u32>,
    pub heights: Vec<Rat>,
    pub checks: Checks,
    pub notes: Vec<String>,
}

impl FibrationReport {
    pub fn pass(&self) -> bool {
        self.checks.pass()
    }

    fn failed(id: u8, note: String) -> Self {
        FibrationReport {
            id,
            resolved_equation: String::new(),
            fibers: vec![],
            fiber_summary: String::new(),
            mw_rank: 0,
            torsion_orders: vec![],
            heights: vec![],
            checks: Checks::default(),
            notes: vec![note],
        }
    }

    /// Mordell-Weil group in the display form `<3/2> + Z/2Z`.
    pub fn mw_display(&self) -> String {
        let mut parts: Vec<String> = self.heights.iter().map(|h| format!("<{h}>")).collect();
        for t in &self.torsion_orders {
            parts.push(format!("Z/{t}Z"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Run every check of one catalog record: variant resolution, fiber
/// configuration, Euler sum, change of variables, torsion orders, heights,
/// and the three lattice identities.
pub fn verify_fibration(rec: &FibrationRecord) -> FibrationReport {
    let resolved = match resolve_variant(rec) {
        Ok(r) => r,
        Err(e) => return FibrationReport::failed(rec.id, e),
    };
    let mut notes = resolved.notes.clone();
    let mut checks = Checks {
        fiber_config_ok: config_matches(&resolved.config, &rec.expected_fibers),
        euler_ok: euler_sum(&resolved.config) == 24,
        ..Checks::default()
    };
    let curve = &resolved.curve;
    let config = &resolved.config;

    match verify_change_of_variables(rec, curve) {
        Ok((ok, mut n)) => {
            checks.change_of_vars_ok = ok;
            notes.append(&mut n);
        }
        Err(e) => notes.push(format!("change of variables failed to evaluate: {e}")),
    }

    // torsion: resolve the point list by membership, then check orders
    let mut torsion_points: Vec<ClaimedPoint> = Vec::new();
    let mut torsion_ok = true;
    if rec.torsion_variants.is_empty() {
        torsion_ok = rec.torsion_orders.is_empty();
    } else {
        let mut resolved_list: Option<(VariantSource, &Vec<ClaimedPoint>)> = None;
        for (source, list) in &rec.torsion_variants {
            if list.iter().all(|cp| curve.is_on_curve(&cp.point)) {
                resolved_list = Some((*source, list));
                break;
            } else {
                notes.push(format!(
                    "torsion list ({source} variant) contains points off the curve"
                ));
            }
        }
        match resolved_list {
            None => {
                torsion_ok = false;
                notes.push("no torsion variant lies on the resolved curve".into());
            }
            Some((source, list)) => {
                if rec.torsion_variants.len() > 1 {
                    notes.insert(0, format!("torsion points resolve to the {source} variant"));
                }
                for cp in list {
                    match torsion_verify(curve, &cp.point, cp.order) {
                        Ok(true) => {}
                        _ => {
                            torsion_ok = false;
                            notes.push(format!(
                                "torsion point {} does not have exact order {}",
                                cp.point, cp.order
                            ));
                        }
                    }
                }
                torsion_points = list.clone();
            }
        }
    }
    checks.torsion_ok = torsion_ok;

    // free generators and heights
    let mut heights: Vec<Rat> = Vec::new();
    let mut heights_ok = true;
    let mut free_points: Vec<CurvePoint<Rat>> = Vec::new();
    if let Some((gen, claimed)) = &rec.free_gen {
        if let Some(alt) = &rec.free_gen_text {
            if curve.is_on_curve(alt) {
                notes.push("both printed free generators lie on the curve".into());
            } else {
                notes.push(format!(
                    "free generator resolves to {gen} (the text variant {alt} is not on the curve)"
                ));
            }
        }
        match height(curve, gen, config) {
            Ok(h) => {
                if h != *claimed {
                    heights_ok = false;
                    notes.push(format!(
                        "generator height {h} differs from claimed {claimed}"
                    ));
                }
                heights.push(h);
            }
            Err(e) => {
                heights_ok = false;
                notes.push(format!("height computation failed: {e}"));
            }
        }
        free_points.push(gen.clone());

        if let Some(neg) = &rec.free_negation {
            match curve.negate(gen) {
                Ok(n) if n == *neg => {
                    notes.push(format!("relation verified: -({gen}) = {neg}"));
                    if let Ok(h) = height(curve, neg, config) {
                        if h != *claimed {
                            heights_ok = false;
                            notes.push("negated generator has a different height".into());
                        }
                    }
                }
                _ => {
                    heights_ok = false;
                    notes.push("claimed negation relation fails".into());
                }
            }
        }

        if let Some(s) = &rec.free2_derive_sub {
            match curve.sub(s, gen) {
                Ok(derived) => {
                    if let Some(printed) = &rec.free2_text {
                        if curve.is_on_curve(printed) {
                            notes.push(format!(
                                "printed second free point {printed} unexpectedly lies on the curve"
                            ));
                        } else {
                            notes.push(format!(
                                "second free point derived by group law as {s} - generator = \
                                 {derived}; the printed pair {printed} is not on the curve"
                            ));
                        }
                    }
                    match height(curve, &derived, config) {
                        Ok(h) if h == *claimed => {
                            notes.push(format!(
                                "relation verified: derived point + generator = {s}"
                            ));
                        }
                        Ok(h) => {
                            heights_ok = false;
                            notes.push(format!("derived free point has height {h}"));
                        }
                        Err(e) => {
                            heights_ok = false;
                            notes.push(format!("derived point height failed: {e}"));
                        }
                    }
                }
                Err(e) => {
                    heights_ok = false;
                    notes.push(format!("group-law derivation failed: {e}"));
                }
            }
        }
    }
    checks.heights_ok = heights_ok;

    let claim = MWClaim {
        rank: rec.mw_rank,
        torsion_orders: rec.torsion_orders.clone(),
        torsion_points: torsion_points
            .iter()
            .map(|cp| (cp.point.clone(), cp.order))
            .collect(),
        free_generators: free_points,
        claimed_heights: rec.free_gen.iter().map(|(_, h)| h.clone()).collect(),
    };
    checks.shioda_tate_ok = shioda_tate_check(config, &claim);
    checks.determinant_ok = determinant_check(config, &claim);
    checks.torsion_injection_ok = torsion_injection_check(config, &claim);

    FibrationReport {
        id: rec.id,
        resolved_equation: curve.to_literal(),
        fibers: config
            .iter()
            .map(|fd| FiberLine {
                place: fd.place.to_string(),
                kodaira: fd.kodaira.symbol(),
                degree: fd.place.degree(),
                euler: fd.kodaira.euler(),
            })
            .collect(),
        fiber_summary: config_summary(config),
        mw_rank: rec.mw_rank,
        torsion_orders: rec.torsion_orders.clone(),
        heights,
        checks,
        notes,
    }
}

// ---------------------------------------------------------------------------
// cross-fibration identities
// ---------------------------------------------------------------------------

fn record(records: &[FibrationRecord], id: u8) -> Result<&FibrationRecord, String> {
    records
        .iter()
        .find(|r| r.id == id)
        .ok_or(format!("fibration {id} missing from catalog"))
}

fn param_table(rec: &FibrationRecord) -> &str {
    &rec.parameter_variants[0].1
}

/// The two 2-neighbor chains, verified exactly in C(X3):
/// (a) Y3 / (u3 X3) = 2 / u4 and (b) (u4^6 + X4 + Y4)/(u4^2 X4) = 2 / u2.
pub fn neighbor_consistency(records: &[FibrationRecord]) -> Result<(bool, bool), String> {
    let r3 = record(records, 3)?;
    let r4 = record(records, 4)?;
    let r2 = record(records, 2)?;

    let u3 = parse_x3_q(param_table(r3), &[])?;
    let x3 = parse_x3_q(&r3.x_expr, &[("u", u3.clone())])?;
    let y3 = parse_x3_q(&r3.y_expr, &[("u", u3.clone())])?;
    let u4 = parse_x3_q(param_table(r4), &[])?;
    let lhs_a = y3.div(&u3.mul(&x3)).map_err(|e| e.to_string())?;
    let rhs_a = X3Elem::from_int(2).div(&u4).map_err(|e| e.to_string())?;
    let chain_a = lhs_a.sub(&rhs_a).is_zero();

    let x4 = parse_x3_q(&r4.x_expr, &[("u", u4.clone())])?;
    let y4 = parse_x3_q(&r4.y_expr, &[("u", u4.clone())])?;
    let u2 = parse_x3_q(param_table(r2), &[])?;
    let num = u4.pow(6).add(&x4).add(&y4);
    let lhs_b = num.div(&u4.mul(&u4).mul(&x4)).map_err(|e| e.to_string())?;
    let rhs_b = X3Elem::from_int(2).div(&u2).map_err(|e| e.to_string())?;
    let chain_b = lhs_b.sub(&rhs_b).is_zero();

    Ok((chain_a, chain_b))
}

/// Negative control: the perturbed parameter u4 = t/(y1 - y2) must break
/// chain (a).
pub fn neighbor_negative_control(records: &[FibrationRecord]) -> Result<bool, String> {
    let r3 = record(records, 3)?;
    let u3 = parse_x3_q(param_table(r3), &[])?;
    let x3 = parse_x3_q(&r3.x_expr, &[("u", u3.clone())])?;
    let y3 = parse_x3_q(&r3.y_expr, &[("u", u3.clone())])?;
    let bad_u4 = parse_x3_q("t/(y1-y2)", &[])?;
    let lhs = y3.div(&u3.mul(&x3)).map_err(|e| e.to_string())?;
    let rhs = X3Elem::from_int(2)
        .div(&bad_u4)
        .map_err(|e| e.to_string())?;
    Ok(lhs.sub(&rhs).is_zero())
}

/// The Q-curve identities: u1 = 1 rewrites to y1^2 - 2y1 - 2y2 - 1 = 0, and
/// the Fibration 2 parameter denominator carries the factor
/// y1^2 + 2y1 + 2y2 - 1 that lifts to Q2.
pub fn q_curve_identities(records: &[FibrationRecord]) -> Result<(bool, bool), String> {
    // 2(y2+1) - (y1-1)^2 == -(y1^2 - 2y1 - 2y2 - 1)
    let lhs = parse_x3_q("2*(y2+1) - (y1-1)^2", &[])?;
    let rhs = parse_x3_q("-(y1^2 - 2*y1 - 2*y2 - 1)", &[])?;
    let q1 = lhs.sub(&rhs).is_zero();

    let r2 = record(records, 2)?;
    let u2 = parse_x3_q(param_table(r2), &[])?;
    let q2_poly: MPoly<Rat> = {
        let e = parse_x3_q("y1^2 + 2*y1 + 2*y2 - 1", &[])?;
        e.coeff(0).num().clone()
    };
    let mut q2 = false;
    for i in 0..3 {
        let c = u2.coeff(i);
        if c.is_zero() {
            continue;
        }
        if mpoly::divisible(c.den(), &q2_poly) == Some(true) {
            q2 = true;
        }
    }
    Ok((q1, q2))
}

/// Negative control for Q1 with the +2y2 sign flipped.
pub fn q1_negative_control() -> Result<bool, String> {
    let lhs = parse_x3_q("2*(y2+1) - (y1-1)^2", &[])?;
    let rhs = parse_x3_q("-(y1^2 - 2*y1 + 2*y2 - 1)", &[])?;
    Ok(lhs.sub(&rhs).is_zero())
}

/// Elimination identity behind the Fibration 1 derivation:
/// 4t^3 - u1 (y1+1)(y1-1)^3 (u1 y1^2 - 2 u1 y1 + u1 - 4) = 0 with the
/// resolved parameter substituted.
pub fn elimination_identity_f1(records: &[FibrationRecord]) -> Result<bool, String> {
    let r1 = record(records, 1)?;
    let u1 = parse_x3_q(param_table(r1), &[])?;
    let expr = parse_x3_q(
        "4*t^3 - u*(y1+1)*(y1-1)^3*(u*y1^2 - 2*u*y1 + u - 4)",
        &[("u", u1)],
    )?;
    Ok(expr.is_zero())
}

/// Coefficientwise twist relation: the resolved Fibration 2 equation equals
/// the quadratic twist of the resolved Fibration 6 equation by d = u.
pub fn twist_relation(records: &[FibrationRecord]) -> Result<bool, String> {
    let r2 = record(records, 2)?;
    let (of, d) = r2
        .twist_of
        .clone()
        .ok_or("fibration 2 carries no twist relation")?;
    let base = resolve_variant(record(records, of)?)?.curve;
    let twisted = base.quadratic_twist(&d).map_err(|e| e.to_string())?;
    let target = resolve_variant(r2)?.curve;
    Ok(twisted == target)
}

// ---------------------------------------------------------------------------
// full verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub fibrations: Vec<FibrationReport>,
    pub q_curve_ok: bool,
    pub pass: bool,
}

/// Verify the requested fibrations (all six when `ids` is empty); the
/// per-fibration work runs on parallel threads and is merged by id.
pub fn verify(ids: &[u8]) -> Result<CatalogReport, String> {
    let records = load_catalog()?;
    let selected: Vec<&FibrationRecord> = if ids.is_empty() {
        records.iter().collect()
    } else {
        let mut out = Vec::new();
        for id in ids {
            out.push(record(&records, *id)?);
        }
        out
    };

    let mut reports: Vec<FibrationReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|rec| scope.spawn(move || verify_fibration(rec)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    reports.sort_by_key(|r| r.id);

    // cross-fibration identities attach to the fibrations they certify
    let (chain_a, chain_b) = neighbor_consistency(&records)?;
    let twist_ok = twist_relation(&records)?;
    for rep in reports.iter_mut() {
        match rep.id {
            2 => {
                rep.checks.neighbor_ok = Some(chain_b);
                rep.checks.twist_ok = Some(twist_ok);
                rep.notes.push(format!(
                    "2-neighbor chain from fibration 4 holds: {chain_b}; quadratic twist of \
                     fibration 6 by u: {twist_ok}"
                ));
            }
            4 => {
                rep.checks.neighbor_ok = Some(chain_a);
                rep.notes.push(format!(
                    "2-neighbor chain from fibration 3 holds: {chain_a}"
                ));
            }
            6 => {
                rep.checks.twist_ok = Some(twist_ok);
            }
            _ => {}
        }
    }

    let (q1, q2) = q_curve_identities(&records)?;
    let q_curve_ok = q1 && q2;
    for rep in reports.iter_mut() {
        if rep.id == 1 {
            rep.notes.push(format!(
                "Q1 identity (u1 = 1 rewrites to y1^2 - 2y1 - 2y2 - 1 = 0): {q1}"
            ));
        }
        if rep.id == 2 {
            rep.notes.push(format!(
                "Q2 factor y1^2 + 2y1 + 2y2 - 1 present in the parameter denominator: {q2}"
            ));
        }
    }
    let pass = reports.iter().all(|r| r.pass()) && q_curve_ok;
    Ok(CatalogReport {
        fibrations: reports,
        q_curve_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn catalog_parses() {
        let records = load_catalog().unwrap();
        assert_eq!(records.len(), 6);
        assert_eq!(records[0].id, 1);
        assert!(records[0].field.is_some());
        assert_eq!(records[1].equation_variants.len(), 2);
        assert_eq!(records[0].parameter_variants.len(), 2);
        // expected fibers of F2 expand the cubic into two places
        assert_eq!(records[1].expected_fibers.len(), 4);
    }

    #[test]
    fn expected_fiber_euler_sums_are_24() {
        for rec in load_catalog().unwrap() {
            let total: u32 = rec
                .expected_fibers
                .iter()
                .map(|(t, p)| t.euler() * p.degree() as u32)
                .sum();
            assert_eq!(total, 24, "fibration {}", rec.id);
        }
    }

    #[test]
    fn resolve_f2_to_table_variant() {
        let records = load_catalog().unwrap();
        let r = resolve_variant(record(&records, 2).unwrap()).unwrap();
        assert_eq!(r.source, VariantSource::Table);
        assert!(r
            .notes
            .iter()
            .any(|n| n.contains("text variant") && n.contains("I16")));
    }

    #[test]
    fn resolve_f6_to_table_variant() {
        let records = load_catalog().unwrap();
        let r = resolve_variant(record(&records, 6).unwrap()).unwrap();
        assert_eq!(r.source, VariantSource::Table);
        // the text variant misses the I3* fiber
        assert!(r.notes.iter().any(|n| n.contains("I0*")));
    }

    #[test]
    fn change_of_variables_all_six() {
        let records = load_catalog().unwrap();
        for rec in &records {
            let resolved = resolve_variant(rec).unwrap();
            let (ok, notes) = verify_change_of_variables(rec, &resolved.curve).unwrap();
            assert!(ok, "fibration {}: {notes:?}", rec.id);
        }
    }

    #[test]
    fn f1_parameter_resolves_to_table_form() {
        let records = load_catalog().unwrap();
        let rec = record(&records, 1).unwrap();
        let resolved = resolve_variant(rec).unwrap();
        let (ok, notes) = verify_change_of_variables(rec, &resolved.curve).unwrap();
        assert!(ok);
        assert!(notes
            .iter()
            .any(|n| n.contains("table form 2*(y2+1)/(y1-1)^2")));
        assert!(notes.iter().any(|n| n.contains("text variant")));
    }

    #[test]
    fn neighbor_chains_hold() {
        let records = load_catalog().unwrap();
        assert_eq!(neighbor_consistency(&records).unwrap(), (true, true));
        assert!(!neighbor_negative_control(&records).unwrap());
    }

    #[test]
    fn q_curves_hold() {
        let records = load_catalog().unwrap();
        assert_eq!(q_curve_identities(&records).unwrap(), (true, true));
        assert!(!q1_negative_control().unwrap());
    }

    #[test]
    fn elimination_identity_holds() {
        let records = load_catalog().unwrap();
        assert!(elimination_identity_f1(&records).unwrap());
    }

    #[test]
    fn twist_relation_holds() {
        let records = load_catalog().unwrap();
        assert!(twist_relation(&records).unwrap());
    }

    #[test]
    fn verify_fibration_4_full() {
        let records = load_catalog().unwrap();
        let rep = verify_fibration(record(&records, 4).unwrap());
        assert!(rep.pass(), "notes: {:?}", rep.notes);
        assert_eq!(rep.heights, vec![rat(3, 2)]);
        assert!(rep.notes.iter().any(|n| n.contains("derived by group law")));
        assert_eq!(rep.fiber_summary, "I18 + 6 I1");
    }

    #[test]
    fn verify_fibration_1_full() {
        let records = load_catalog().unwrap();
        let rep = verify_fibration(record(&records, 1).unwrap());
        assert!(rep.pass(), "notes: {:?}", rep.notes);
        assert!(rep.heights.is_empty());
        assert!(rep.torsion_orders.is_empty());
        assert_eq!(rep.fiber_summary, "2 II* + IV");
    }

    #[test]
    fn verify_fibration_6_full() {
        let records = load_catalog().unwrap();
        let rep = verify_fibration(record(&records, 6).unwrap());
        assert!(rep.pass(), "notes: {:?}", rep.notes);
        // 4-torsion resolves to Y = +-2u^3
        assert!(rep
            .notes
            .iter()
            .any(|n| n.contains("torsion points resolve to the text variant")));
    }

    #[test]
    fn lattice_and_analytic_fiber_types_agree() {
        // where the source gives fiber divisors, the types recognized on
        // the 24-curve lattice must appear in the analytic configuration
        use crate::nslattice::{
            derive_div3_correction, parse_divisor, published_divisors, recognize_fiber,
        };
        let records = load_catalog().unwrap();
        let has = |id: u8, t: crate::kodaira::KodairaType| -> bool {
            let cfg = resolve_variant(record(&records, id).unwrap())
                .unwrap()
                .config;
            cfg.iter().any(|f| f.kodaira == t)
        };
        let (z1, p1) = published_divisors::DIV1;
        for d in [z1, p1] {
            let t = recognize_fiber(&parse_divisor(d).unwrap()).unwrap();
            assert!(has(1, t));
        }
        let fix = derive_div3_correction().unwrap();
        assert!(has(3, recognize_fiber(&fix.corrected_zero).unwrap()));
        let (_, p3) = published_divisors::DIV3_PRINTED;
        assert!(has(
            3,
            recognize_fiber(&parse_divisor(p3).unwrap()).unwrap()
        ));
        assert!(has(
            4,
            recognize_fiber(&parse_divisor(published_divisors::DIV4).unwrap()).unwrap()
        ));
        let (zt, pt) = published_divisors::T;
        for d in [zt, pt] {
            let t = recognize_fiber(&parse_divisor(d).unwrap()).unwrap();
            assert!(has(6, t));
        }
    }

    #[test]
    fn full_suite_passes() {
        let report = verify(&[]).unwrap();
        assert!(report.pass, "failures: {:#?}", report.fibrations);
        assert_eq!(report.fibrations.len(), 6);
        for rep in &report.fibrations {
            assert!(rep.pass(), "fibration {} notes: {:?}", rep.id, rep.notes);
        }
        assert_eq!(report.fibrations[1].checks.twist_ok, Some(true));
        assert_eq!(report.fibrations[3].checks.neighbor_ok, Some(true));
    }
}
