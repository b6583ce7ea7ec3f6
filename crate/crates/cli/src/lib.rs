//! The `mindeg` command line.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mindeg_core::elliptic::{
    four_torsion_points, point_search, three_torsion_points, torsion_class, EllCurve, EllPoint,
    SearchOutcome,
};
use mindeg_core::multiquad::{TriquadElement, TriquadField};
use mindeg_core::numtheory::parse_rational;
use mindeg_core::quartic::{quartic_witness, QuarticElement, QuarticField, QuarticOutcome};
use mindeg_core::survey::{
    conjecture_rows_to_csv, conjecture_scan, default_candidates, family55_scan, rows_to_csv,
    selmer_constant, twist_scan, Family55Config, FamilyParams, ScanRow, TwistScanConfig,
};
use mindeg_core::witness::{
    min_degree, normalize_index2_target, point_to_witness, verify_certificate_json,
    CertificateJson, DecideOptions, MinDeg2Outcome, MinDegree, SeedOrder, WitnessSource,
};
use mindeg_core::{Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mindeg", version, about = "Minimal degrees of elements in multiquadratic and quartic fields")]
struct Cli {
    /// Naive height bound for rational point searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    height_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Constant coordinate `b0` of the constructed witness.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    b0: String,
    #[arg(long, global = true, value_enum, default_value_t = SeedArg::TorsionFirst)]
    seed_order: SeedArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SeedArg {
    /// Torsion points of order 3 or 4 before the height search.
    TorsionFirst,
    /// The height search before torsion points.
    SearchFirst,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal degree of ELEMENT over the triquadratic FIELD, with a certificate.
    Mindeg { field: String, element: String },
    /// Degree-2 witness for an index-2 element, optionally from a given point.
    Witness {
        field: String,
        element: String,
        /// Point on the normalized curve, e.g. "(8, 8)".
        #[arg(long)]
        point: Option<String>,
    },
    /// Show a curve: `a,A,B`, `congruent:B`, or FIELD ELEMENT for the curve of a target.
    Curve {
        #[arg(num_args = 1..=2, required = true)]
        curve: Vec<String>,
    },
    /// Rational torsion of a curve.
    Torsion {
        #[arg(num_args = 1..=2, required = true)]
        curve: Vec<String>,
    },
    /// Search for a point outside the 2-torsion up to the height bound.
    Search {
        #[arg(num_args = 1..=2, required = true)]
        curve: Vec<String>,
    },
    /// Re-check a serialized certificate.
    Verify { cert_file: std::path::PathBuf },
    /// Degree witness for ELEMENT in the Galois quartic field Q[x]/(POLY).
    Quartic { polynomial: String, element: String },
    #[command(subcommand)]
    Survey(Survey),
    /// Partial product `1/∏(1 + 2^−j)`.
    SelmerConstant {
        #[arg(long, default_value_t = 60)]
        terms: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Survey {
    /// Quadratic twists of the `(a, A, B)` curve.
    Twists(TwistArgs),
    /// The explicit-point family `a² − 1 = (B − A)b²`.
    Family55(FamilyArgs),
    /// Pairs `(A, B)` with a coefficient `a` showing no degree-2 witness.
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug)]
struct TwistArgs {
    /// Base curve `a,A,B`.
    #[arg(long, default_value = "1,2,3")]
    curve: String,
    #[arg(long, default_value_t = 200)]
    gamma_max: i64,
    /// Third generator of each twisted field; smallest valid when omitted.
    #[arg(long)]
    c: Option<i64>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// `A = B − offset`.
    #[arg(long, default_value_t = 2)]
    offset: i64,
    #[arg(long, default_value_t = 3)]
    b_min: i64,
    #[arg(long, default_value_t = 100)]
    b_max: i64,
    /// Fixed `a,b`.
    #[arg(long, conflicts_with = "mn")]
    ab: Option<String>,
    /// `m,n` for `a = (m² + n²)/(m² − n²)`, `b = 2mn/(c(m² − n²))`.
    #[arg(long)]
    mn: Option<String>,
    #[arg(long)]
    c: Option<i64>,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 30)]
    a_max: i64,
    #[arg(long, default_value_t = 30)]
    b_max: i64,
    /// Comma-separated rationals; integers 1..10 and halves up to 19/2 by default.
    #[arg(long)]
    candidates: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    format: Format,
    height_bound: u64,
    options: DecideOptions,
}

impl Ctx<'_> {
    fn emit(&mut self, json: &Value, text: &str) -> std::io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string_pretty(json).expect("serializable")),
            _ => write!(self.out, "{text}"),
        }
    }

    fn no_csv(&self, what: &str) -> std::result::Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(Failure::Usage(format!("csv output is only available for survey, not {what}")));
        }
        Ok(())
    }
}

/// Run with `args` (program name first); returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let b0 = match parse_rational(&cli.b0) {
        Ok(b0) => b0,
        Err(e) => {
            let _ = writeln!(err, "error: --b0: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        out,
        format: cli.format,
        height_bound: cli.height_bound,
        options: DecideOptions {
            b0,
            seed_order: match cli.seed_order {
                SeedArg::TorsionFirst => SeedOrder::TorsionFirst,
                SeedArg::SearchFirst => SeedOrder::SearchFirst,
            },
        },
    };
    match dispatch(&mut ctx, cli.command, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Domain(format!("output: {e}"))
}

fn dispatch(ctx: &mut Ctx, command: Command, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Mindeg { field, element } => cmd_mindeg(ctx, &field, &element, err),
        Command::Witness { field, element, point } => cmd_witness(ctx, &field, &element, point.as_deref(), err),
        Command::Curve { curve } => cmd_curve(ctx, &curve),
        Command::Torsion { curve } => cmd_torsion(ctx, &curve),
        Command::Search { curve } => cmd_search(ctx, &curve),
        Command::Verify { cert_file } => cmd_verify(ctx, &cert_file),
        Command::Quartic { polynomial, element } => cmd_quartic(ctx, &polynomial, &element),
        Command::Survey(s) => cmd_survey(ctx, s, err),
        Command::SelmerConstant { terms } => cmd_selmer(ctx, terms),
    }
}

fn parse_target(field: &str, element: &str) -> std::result::Result<TriquadElement, Failure> {
    let f = TriquadField::parse(field).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("field: {e}")),
        other => Failure::Domain(other.to_string()),
    })?;
    TriquadElement::parse(f, element).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("element: {e}")),
        other => Failure::Domain(other.to_string()),
    })
}

fn field_line(v: &TriquadElement) -> String {
    format!("field: {}\ntarget: {}\n", v.field(), v)
}

fn certificate_text(c: &CertificateJson) -> String {
    let mut s = String::new();
    if let (Some(curve), Some(point)) = (&c.curve, &c.point) {
        if let Ok(curve) = EllCurve::from_json(curve) {
            s += &format!("curve: {curve}\n");
        }
        if let Ok(point) = EllPoint::from_json(point) {
            s += &format!("point: {point} ({})\n", c.source);
        }
    } else {
        s += &format!("source: {}\n", c.source);
    }
    s += &format!(
        "alpha: {}\npolynomial: {}\ndegree: {}\nverified: {}\n",
        c.alpha.pretty, c.polynomial_pretty, c.degree, c.verified
    );
    s
}

fn inconclusive_message(height_bound: u64, torsion: &str) -> String {
    format!(
        "no degree-2 witness up to bound; torsion {torsion}; consistent with rank 0 (not a proof); H = {height_bound}"
    )
}

fn cmd_mindeg(ctx: &mut Ctx, field: &str, element: &str, err: &mut dyn Write) -> Outcome {
    ctx.no_csv("mindeg")?;
    let v = parse_target(field, element)?;
    let result = min_degree(&v, ctx.height_bound, &ctx.options)?;
    let header = field_line(&v);
    let index = v.subfield_index();
    let (cert, code) = match &result {
        MinDegree::Rational => {
            let json = json!({
                "status": "proved", "field": v.field().generators(), "target": v.to_string(),
                "subfield_index": index, "min_degree": 0,
            });
            ctx.emit(&json, &format!("{header}min degree: 0 (rational)\n")).map_err(io)?;
            return Ok(EXIT_OK);
        }
        MinDegree::Primitive(c) => (CertificateJson::triquadratic(c, "primitive", None, None), EXIT_OK),
        MinDegree::Index4(c) => (CertificateJson::triquadratic(c, "index4", None, None), EXIT_OK),
        MinDegree::Index2(MinDeg2Outcome::WitnessFound(f)) => (
            CertificateJson::triquadratic(&f.certificate, f.source.label(), Some(&f.point), Some(&f.curve)),
            EXIT_OK,
        ),
        MinDegree::Index2(MinDeg2Outcome::NoWitnessUpToBound { height_bound, torsion }) => {
            let msg = inconclusive_message(*height_bound, torsion.pretty());
            let curve = normalize_index2_target(&v)?.curve()?;
            let json = json!({
                "status": "inconclusive", "field": v.field().generators(), "target": v.to_string(),
                "subfield_index": index, "min_degree": Value::Null, "lower_bound": v.subfield_index(),
                "curve": curve.to_json(), "torsion": torsion.kind.to_string(),
                "height_bound": height_bound, "message": msg,
            });
            ctx.emit(&json, &format!("{header}curve: {curve}\n{msg}\n")).map_err(io)?;
            if ctx.format == Format::Json {
                let _ = writeln!(err, "{msg}");
            }
            return Ok(EXIT_INCONCLUSIVE);
        }
    };
    let degree = result.degree().expect("proved");
    let json = json!({
        "status": "proved", "field": v.field().generators(), "target": v.to_string(),
        "subfield_index": index, "min_degree": degree, "certificate": cert,
    });
    let text = format!("{header}subfield index: {index}\nmin degree: {degree}\n{}", certificate_text(&cert));
    ctx.emit(&json, &text).map_err(io)?;
    Ok(code)
}

fn cmd_witness(ctx: &mut Ctx, field: &str, element: &str, point: Option<&str>, err: &mut dyn Write) -> Outcome {
    ctx.no_csv("witness")?;
    let Some(point) = point else {
        let v = parse_target(field, element)?;
        if v.subfield_index() != 2 {
            return Err(Failure::Domain(format!(
                "witness needs an index-2 element; subfield index is {}",
                v.subfield_index()
            )));
        }
        return cmd_mindeg(ctx, field, element, err);
    };
    let v = parse_target(field, element)?;
    let target = normalize_index2_target(&v)?;
    let curve = target.curve()?;
    let p = EllPoint::parse(point).map_err(|e| Failure::Usage(format!("--point: {e}")))?;
    if let Some((x, y)) = p.coords() {
        if !curve.contains(x, y) {
            return Err(Failure::Domain(format!("{p} is not on {curve}")));
        }
    }
    let cert = point_to_witness(&target, &p, &ctx.options.b0)?;
    let source = WitnessSource::of_point(&curve, &p)?;
    let json = CertificateJson::triquadratic(&cert, source.label(), Some(&p), Some(&curve));
    let text = format!("{}{}", field_line(&v), certificate_text(&json));
    ctx.emit(&serde_json::to_value(&json).expect("serializable"), &text).map_err(io)?;
    Ok(EXIT_OK)
}

fn parse_curve(args: &[String]) -> std::result::Result<EllCurve, Failure> {
    match args {
        [field, element] => {
            let v = parse_target(field, element)?;
            Ok(normalize_index2_target(&v)?.curve()?)
        }
        [one] => {
            if let Some(b) = one.strip_prefix("congruent:") {
                let b: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad congruent curve `{one}`")))?;
                return Ok(mindeg_core::elliptic::congruent_curve(b)?);
            }
            let parts: Vec<&str> = one.split(',').map(str::trim).collect();
            let [a, big_a, big_b] = parts[..] else {
                return Err(Failure::Usage(format!(
                    "curve `{one}`: expected `a,A,B` or `congruent:B`"
                )));
            };
            let a = parse_rational(a).map_err(|e| Failure::Usage(format!("curve a: {e}")))?;
            let int = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| Failure::Usage(format!("curve `{one}`: `{s}` is not an integer")))
            };
            Ok(EllCurve::from_params(a, int(big_a)?, int(big_b)?)?)
        }
        _ => Err(Failure::Usage("expected a curve or FIELD ELEMENT".into())),
    }
}

fn points_json(points: &[EllPoint]) -> Value {
    serde_json::to_value(points.iter().map(EllPoint::to_json).collect::<Vec<_>>()).expect("serializable")
}

fn points_text(points: &[EllPoint]) -> String {
    if points.is_empty() {
        return "none".into();
    }
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn cmd_curve(ctx: &mut Ctx, args: &[String]) -> Outcome {
    ctx.no_csv("curve")?;
    let curve = parse_curve(args)?;
    let two = curve.two_torsion();
    let mut text = format!("curve: {curve}\nr: {}\ns: {}\n", curve.r(), curve.s());
    if let Some(p) = curve.provenance() {
        text += &format!("provenance: a = {}, A = {}, B = {}\n", p.a, p.big_a, p.big_b);
    }
    text += &format!("2-torsion: {}\n", points_text(&two));
    let json = json!({ "curve": curve.to_json(), "equation": curve.to_string(), "two_torsion": points_json(&two) });
    ctx.emit(&json, &text).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_torsion(ctx: &mut Ctx, args: &[String]) -> Outcome {
    ctx.no_csv("torsion")?;
    let curve = parse_curve(args)?;
    let class = torsion_class(&curve)?;
    let threes = three_torsion_points(&curve);
    let fours = four_torsion_points(&curve);
    let cert = class.certificate.as_ref().map(|(p, q)| json!({ "p": p.to_string(), "q": q.to_string() }));
    let mut text = format!("curve: {curve}\ntorsion: {}\n", class.pretty());
    if let Some((p, q)) = &class.certificate {
        text += &format!("certificate: (p, q) = ({p}, {q})\n");
    }
    text += &format!("3-torsion: {}\n4-torsion: {}\n", points_text(&threes), points_text(&fours));
    let json = json!({
        "curve": curve.to_json(), "torsion": class.kind.to_string(), "certificate": cert,
        "three_torsion": points_json(&threes), "four_torsion": points_json(&fours),
    });
    ctx.emit(&json, &text).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_search(ctx: &mut Ctx, args: &[String]) -> Outcome {
    ctx.no_csv("search")?;
    let curve = parse_curve(args)?;
    match point_search(&curve, ctx.height_bound) {
        SearchOutcome::FoundPoint(p) => {
            let json = json!({ "curve": curve.to_json(), "outcome": "found", "point": p.to_json(), "height_bound": ctx.height_bound });
            ctx.emit(&json, &format!("curve: {curve}\nfound: {p}\n")).map_err(io)?;
            Ok(EXIT_OK)
        }
        SearchOutcome::ExhaustedBound(h) => {
            let json = json!({ "curve": curve.to_json(), "outcome": "exhausted", "height_bound": h });
            let text = format!("curve: {curve}\nno point outside the 2-torsion with naive height ≤ {h} (not a proof of rank 0)\n");
            ctx.emit(&json, &text).map_err(io)?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_verify(ctx: &mut Ctx, path: &std::path::Path) -> Outcome {
    ctx.no_csv("verify")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cert: CertificateJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(format!("certificate verification failed: malformed certificate: {e}")))?;
    verify_certificate_json(&cert)?;
    let json = json!({ "verified": true, "kind": cert.kind, "degree": cert.degree });
    ctx.emit(&json, &format!("verified: {} certificate of degree {}\n", cert.kind, cert.degree))
        .map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_quartic(ctx: &mut Ctx, polynomial: &str, element: &str) -> Outcome {
    ctx.no_csv("quartic")?;
    let field = QuarticField::parse(polynomial)?;
    let v = QuarticElement::parse(&field, element)?;
    let group = format!("{:?}", field.group_type());
    let subfields: Vec<String> = field.quadratic_subfields().iter().map(|s| s.radicand.to_string()).collect();
    let mut text = format!(
        "field: Q[x]/({})\ngroup: {group}\nquadratic subfields: {}\ntarget: {v}\n",
        field.polynomial(),
        subfields.iter().map(|d| format!("Q(√{d})")).collect::<Vec<_>>().join(", ")
    );
    let json = match quartic_witness(&v)? {
        QuarticOutcome::DegreeZero(c) => {
            text += "degree: 0 (rational)\n";
            json!({ "group": group, "subfields": subfields, "target": v.to_string(), "rational": c.to_string(), "degree": 0 })
        }
        QuarticOutcome::Witness(cert) => {
            let c = CertificateJson::quartic(&cert, "quartic");
            text += &certificate_text(&c);
            json!({ "group": group, "subfields": subfields, "target": v.to_string(), "degree": c.degree, "certificate": c })
        }
    };
    ctx.emit(&json, &text).map_err(io)?;
    Ok(EXIT_OK)
}

fn pair(text: &str, what: &str) -> std::result::Result<(Rational, Rational), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [x, y] = parts[..] else {
        return Err(Failure::Usage(format!("{what}: expected two comma-separated values")));
    };
    let p = |s: &str| parse_rational(s).map_err(|e| Failure::Usage(format!("{what}: {e}")));
    Ok((p(x)?, p(y)?))
}

fn rows_text(rows: &[ScanRow]) -> String {
    let mut s = String::new();
    for r in rows {
        s += &format!(
            "{:>5}  A = {:<6} B = {:<6} a = {:<6} {:<6} {:<9} {}\n",
            r.parameter,
            r.big_a,
            r.big_b,
            r.a,
            r.torsion,
            r.outcome,
            r.witness.as_ref().map(|w| w.alpha.pretty.as_str()).unwrap_or("-")
        );
    }
    s
}

fn cmd_survey(ctx: &mut Ctx, survey: Survey, err: &mut dyn Write) -> Outcome {
    match survey {
        Survey::Twists(args) => {
            let curve = parse_curve(std::slice::from_ref(&args.curve))?;
            let prov = curve.provenance().expect("from_params keeps provenance").clone();
            let cfg = TwistScanConfig {
                a: prov.a,
                big_a: prov.big_a,
                big_b: prov.big_b,
                gamma_max: args.gamma_max,
                height_bound: ctx.height_bound,
                c: args.c,
            };
            let report = twist_scan(&cfg)?;
            match ctx.format {
                Format::Csv => write!(ctx.out, "{}", rows_to_csv(&report.rows)?).map_err(io)?,
                _ => {
                    let s = &report.summary;
                    let text = format!(
                        "{}D = {}\nrows: {}\nZ2xZ2 and exhausted: {} ({:.4})\nrows with 3-torsion: {}\nSelmer-constant reference: {}\ncaveat: {}\n",
                        rows_text(&report.rows),
                        report.modulus,
                        s.rows,
                        s.no_witness_rows,
                        s.fraction,
                        s.three_torsion_rows,
                        s.selmer_reference,
                        s.caveat
                    );
                    ctx.emit(&serde_json::to_value(&report).expect("serializable"), &text).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Survey::Family55(args) => {
            let params = match (&args.ab, &args.mn) {
                (_, Some(mn)) => {
                    let (m, n) = pair(mn, "--mn")?;
                    let int = |q: &Rational| {
                        q.is_integer()
                            .then(|| q.to_integer().try_into().ok())
                            .flatten()
                            .ok_or_else(|| Failure::Usage("--mn takes integers".into()))
                    };
                    FamilyParams::Pythagorean { m: int(&m)?, n: int(&n)? }
                }
                (Some(ab), None) => {
                    let (a, b) = pair(ab, "--ab")?;
                    FamilyParams::Explicit { a, b }
                }
                (None, None) => FamilyParams::Explicit {
                    a: Rational::from_integer(3.into()),
                    b: Rational::from_integer(2.into()),
                },
            };
            let cfg = Family55Config {
                offset: args.offset,
                b_min: args.b_min,
                b_max: args.b_max,
                params,
                c: args.c,
            };
            let rows = family55_scan(&cfg)?;
            for b in args.b_min..=args.b_max {
                let a = b - args.offset;
                let sf = mindeg_core::numtheory::is_squarefree_i64;
                if a != 0 && sf(a) && sf(b) && !rows.iter().any(|r| r.parameter == b) {
                    let _ = writeln!(err, "skipped B = {b}: Q(√{a}, √{b}, √C) is not of degree 8");
                }
            }
            match ctx.format {
                Format::Csv => write!(ctx.out, "{}", rows_to_csv(&rows)?).map_err(io)?,
                _ => {
                    let verified = rows.iter().filter(|r| r.witness.as_ref().is_some_and(|w| w.verified)).count();
                    let text = format!("{}rows: {}, verified witnesses: {verified}\n", rows_text(&rows), rows.len());
                    ctx.emit(&json!({ "rows": rows, "verified": verified }), &text).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Survey::Conjecture(args) => {
            let candidates = match &args.candidates {
                Some(list) => list
                    .split(',')
                    .map(|s| parse_rational(s.trim()).map_err(|e| Failure::Usage(format!("--candidates: {e}"))))
                    .collect::<std::result::Result<Vec<_>, _>>()?,
                None => default_candidates(),
            };
            let rows = conjecture_scan(args.a_max, args.b_max, &candidates, ctx.height_bound)?;
            match ctx.format {
                Format::Csv => write!(ctx.out, "{}", conjecture_rows_to_csv(&rows)?).map_err(io)?,
                _ => {
                    let mut text = String::new();
                    for r in &rows {
                        text += &format!(
                            "A = {:<4} B = {:<4} a = {:<6} {}\n",
                            r.big_a,
                            r.big_b,
                            r.candidate.as_deref().unwrap_or("-"),
                            r.strength
                        );
                    }
                    ctx.emit(&json!({ "height_bound": ctx.height_bound, "rows": rows }), &text).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_selmer(ctx: &mut Ctx, terms: u32) -> Outcome {
    ctx.no_csv("selmer-constant")?;
    if terms == 0 {
        return Err(Failure::Usage("--terms must be at least 1".into()));
    }
    let c = selmer_constant(terms);
    let json = json!({ "terms": terms, "exact": c.exact.to_string(), "decimal": c.decimal });
    ctx.emit(&json, &format!("{}\n", c.decimal)).map_err(io)?;
    Ok(EXIT_OK)
}
