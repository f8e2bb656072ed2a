use anyhow::{bail, Context, Result};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use qmark::blockcode::{
    detect_block_period, encode_blocks, BlockPeriod, BlockSequence, BlockTail, DigitSource, SurfaceData,
};
use qmark::cluster::{is_laurent, mutate_path, mutation_orbit, ClusterSeed};
use qmark::contfrac::{cf_expand, cf_value, convergents, ContinuedFraction, Tail};
use qmark::exactnum::{parse_rational, BigRational};
use qmark::jacobiperron::{classify_jp, jp_convergent, jp_expand, JPExpansion, JpEnd};
use qmark::ktheory::{
    classification_correspondence, k0_blocks, k0_cuntz_krieger, AbelianGroupPresentation, CfKind, IntegerMatrix,
};
use qmark::minkowski::{classify_cf, inverse_question_mark, question_mark_binary, question_mark_exact};
use qmark::ExactNumber;

use crate::{BlocksCommand, ClusterCommand, Command, JpCommand, K0Command, QmCommand, SampleArgs};

pub fn run(cmd: &Command) -> Result<String> {
    let value = match cmd {
        Command::Qm(QmCommand::Eval { x }) => qm_eval(x)?,
        Command::Qm(QmCommand::Inv { y }) => qm_inv(y)?,
        Command::Qm(QmCommand::Classify { x }) => qm_classify(x)?,
        Command::Qm(QmCommand::Sample(args)) | Command::Sample(args) => return sample(args),
        Command::Cf { x, convergents } => cf(x, *convergents)?,
        Command::Jp(JpCommand::Expand { theta, steps }) => jp(theta, *steps)?,
        Command::Blocks(BlocksCommand::Encode { x, surface, count }) => blocks(x, *surface, *count)?,
        Command::K0(K0Command::Matrix { file }) => k0_matrix(file)?,
        Command::K0(K0Command::Blocks { x, surface, trunc }) => k0_of_blocks(x, *surface, *trunc)?,
        Command::Cluster(ClusterCommand::Mutate { rank, b, path }) => cluster_mutate(*rank, b, path)?,
        Command::Cluster(ClusterCommand::Orbit { rank, b, depth, budget }) => {
            cluster_orbit(*rank, b, *depth, *budget)?
        }
        Command::Classify { x, surface, horizon } => classify(x, *surface, *horizon)?,
    };
    Ok(serde_json::to_string(&value)?)
}

fn object(command: &str, fields: Value) -> Value {
    let mut map = match fields {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    map.insert("command".into(), command.into());
    Value::Object(map)
}

fn number(s: &str) -> Result<ExactNumber> {
    s.parse().with_context(|| format!("reading {s:?}"))
}

// A number, or a continued fraction written in brackets.
fn fraction(s: &str) -> Result<ContinuedFraction> {
    if s.trim_start().starts_with('[') {
        s.parse().with_context(|| format!("reading {s:?}"))
    } else {
        Ok(cf_expand(&number(s)?))
    }
}

fn vector(s: &str) -> Result<Vec<ExactNumber>> {
    s.split(',').map(|t| number(t.trim())).collect()
}

fn approx(x: &BigRational) -> Value {
    x.to_f64().map_or(Value::Null, Value::from)
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn qm_eval(x: &str) -> Result<Value> {
    if x.trim_start().starts_with('[') {
        let cf = fraction(x)?;
        let code = question_mark_binary(&cf)?;
        let c = classify_cf(&cf, 0)?;
        let mut out = json!({ "input": cf.to_string(), "binary": code.to_string() });
        if let Some(v) = c.value {
            out["value"] = v.to_string().into();
            out["value_approx"] = approx(&v);
            out["dyadic"] = (c.image == qmark::minkowski::ImageClass::DyadicRational).into();
        }
        return Ok(object("qm eval", out));
    }
    let n = number(x)?;
    let y = question_mark_exact(&n)?;
    let code = question_mark_binary(&cf_expand(&n))?;
    let v = y.to_rational();
    Ok(object(
        "qm eval",
        json!({
            "input": n.to_string(),
            "value": y.to_string(),
            "dyadic": y.is_dyadic(),
            "binary": code.to_string(),
            "value_approx": approx(&v),
        }),
    ))
}

fn qm_inv(y: &str) -> Result<Value> {
    let y = parse_rational(y)?;
    let x = inverse_question_mark(&y)?;
    Ok(object(
        "qm inv",
        json!({
            "input": y.to_string(),
            "value": x.to_string(),
            "cf": cf_expand(&x).to_string(),
            "value_approx": x.to_f64(),
        }),
    ))
}

fn qm_classify(x: &str) -> Result<Value> {
    let cf = fraction(x)?;
    let c = classify_cf(&cf, 64)?;
    Ok(object(
        "qm classify",
        json!({
            "input": cf.to_string(),
            "domain": c.domain.to_string(),
            "image": c.image.to_string(),
            "value": c.value.map(|v| v.to_string()),
        }),
    ))
}

fn sample(args: &SampleArgs) -> Result<String> {
    if args.count == 0 {
        bail!("--count must be positive");
    }
    let n = args.count;
    let denom = (n - 1).max(1) as i64;
    let mut rows: Vec<(BigRational, BigRational)> = (0..n as i64)
        .into_par_iter()
        .map(|i| {
            let x = BigRational::new(i.into(), denom.into());
            let y = question_mark_exact(&ExactNumber::Rational(x.clone()))?.to_rational();
            Ok((x, y))
        })
        .collect::<qmark::Result<_>>()?;
    rows.sort();
    rows.dedup();
    let mut out = String::from("x,qm,x_approx,qm_approx");
    for (x, y) in rows {
        let f = |r: &BigRational| r.to_f64().map_or_else(String::new, |v| v.to_string());
        out.push_str(&format!("\n{x},{y},{},{}", f(&x), f(&y)));
    }
    Ok(out)
}

fn cf_kind(cf: &ContinuedFraction) -> Value {
    match cf.tail() {
        Tail::Finite(d) => json!({ "kind": "finite", "length": d.len() }),
        Tail::Periodic { preperiod, period } => {
            json!({ "kind": "periodic", "preperiod": preperiod.len(), "period": period.len() })
        }
        Tail::Stream(s) => json!({ "kind": "stream", "declared_aperiodic": s.is_declared_aperiodic() }),
    }
}

fn cf(x: &str, k: usize) -> Result<Value> {
    let cf = fraction(x)?;
    let value = cf_value(&cf)?;
    let conv = convergents(&cf, k);
    Ok(object(
        "cf",
        json!({
            "cf": cf.to_string(),
            "shape": cf_kind(&cf),
            "value": value.to_string(),
            "value_approx": value.to_f64(),
            "convergents": strings(&conv),
        }),
    ))
}

fn jp_end(e: &JPExpansion) -> &'static str {
    match e.end() {
        JpEnd::Terminated => "terminated",
        JpEnd::Truncated => "truncated",
        JpEnd::Periodic { .. } => "periodic",
        JpEnd::Aperiodic => "aperiodic",
    }
}

fn jp(theta: &str, steps: usize) -> Result<Value> {
    let theta = vector(theta)?;
    let e = jp_expand(&theta, steps)?;
    let digits: Vec<Value> = e.digits().iter().map(strings).collect();
    let mut conv = Vec::new();
    for k in 1..=e.digits().len() {
        match jp_convergent(&e, k) {
            Ok(c) => conv.push(strings(&c)),
            Err(_) => conv.push(Value::Null),
        }
    }
    let (domain, image) = classify_jp(&e);
    Ok(object(
        "jp expand",
        json!({
            "input": strings(&theta),
            "digits": digits,
            "convergents": conv,
            "end": jp_end(&e),
            "remainder": e.remainder().map(strings),
            "domain": domain.to_string(),
            "image": image.to_string(),
        }),
    ))
}

fn surface_of((g, n): (u32, u32)) -> Result<SurfaceData> {
    Ok(SurfaceData::new(g, n)?)
}

fn encode(x: &str, surface: SurfaceData, count: usize) -> Result<BlockSequence> {
    let theta = if x.trim_start().starts_with('[') { Vec::new() } else { vector(x)? };
    if theta.len() <= 1 {
        let cf = fraction(x)?;
        Ok(encode_blocks(DigitSource::Cf(&cf), surface, count)?)
    } else {
        let e = jp_expand(&theta, count)?;
        Ok(encode_blocks(DigitSource::Jp(&e), surface, count)?)
    }
}

fn period_json(p: &BlockPeriod) -> Value {
    match p {
        BlockPeriod::Finite { length } => json!({ "kind": "finite", "length": length }),
        BlockPeriod::Periodic { preperiod, period } => {
            json!({ "kind": "periodic", "preperiod": preperiod, "period": period })
        }
        BlockPeriod::AperiodicAtHorizon { horizon } => json!({ "kind": "aperiodic", "horizon": horizon }),
        BlockPeriod::Unknown { horizon, candidate } => json!({
            "kind": "unknown",
            "horizon": horizon,
            "candidate": candidate.map(|(p, l)| json!({ "preperiod": p, "period": l })),
        }),
    }
}

fn tail_tag(t: &BlockTail) -> &'static str {
    match t {
        BlockTail::Finite { .. } => "finite",
        BlockTail::Periodic { .. } => "block-periodic",
        BlockTail::Aperiodic { .. } => "aperiodic",
        BlockTail::Unknown { .. } => "unknown",
    }
}

fn blocks(x: &str, surface: (u32, u32), count: usize) -> Result<Value> {
    let surface = surface_of(surface)?;
    let seq = encode(x, surface, count)?;
    let rows: Vec<Value> = seq
        .blocks()
        .iter()
        .map(|b| Value::Array(b.entries().iter().map(|&e| Value::from(u8::from(e))).collect()))
        .collect();
    Ok(object(
        "blocks encode",
        json!({
            "input": x,
            "surface": surface.to_string(),
            "block_length": surface.block_length(),
            "blocks": rows,
            "classification": tail_tag(seq.tail()),
            "period": period_json(&detect_block_period(&seq, count)),
        }),
    ))
}

fn group_json(g: &AbelianGroupPresentation) -> Value {
    json!({
        "group": g.to_string(),
        "free_rank": g.free_rank,
        "invariant_factors": strings(&g.invariant_factors),
        "order": g.order().map(|o| o.to_string()),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

fn k0_matrix(file: &std::path::Path) -> Result<Value> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text).context("matrix must be a JSON array of integer rows")?;
    let a = IntegerMatrix::from_rows(&rows)?;
    let ck = k0_cuntz_krieger(&a)?;
    let flags: Vec<&str> = ck.flags.iter().map(|f| f.as_str()).collect();
    Ok(object(
        "k0 matrix",
        merge(
            group_json(&ck.k0),
            json!({ "matrix": a.to_string(), "k1_rank": ck.k1_rank, "flags": flags }),
        ),
    ))
}

fn k0_of_blocks(x: &str, surface: (u32, u32), trunc: usize) -> Result<Value> {
    let surface = surface_of(surface)?;
    let seq = encode(x, surface, trunc)?;
    let k = k0_blocks(&seq, trunc)?;
    let flags: Vec<String> = k.degenerate.iter().map(|i| format!("degenerate-block-{i}")).collect();
    Ok(object(
        "k0 blocks",
        merge(
            group_json(&k.group),
            json!({
                "input": x,
                "surface": surface.to_string(),
                "truncation": k.truncation,
                "factors": strings(&k.factors),
                "flags": flags,
            }),
        ),
    ))
}

fn exchange_matrix(rank: usize, b: &str) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(b).context("--b must be a JSON array of integer rows")?;
    if rows.len() != rank {
        bail!("--rank {rank} does not match a {}-row matrix", rows.len());
    }
    Ok(rows)
}

fn cluster_mutate(rank: usize, b: &str, path: &[usize]) -> Result<Value> {
    let seed = ClusterSeed::initial(exchange_matrix(rank, b)?)?;
    let s = mutate_path(&seed, path)?;
    let vars: Vec<Value> = s
        .variables()
        .iter()
        .map(|v| match is_laurent(v) {
            Some(p) => p.to_string().into(),
            None => v.to_string().into(),
        })
        .collect();
    let laurent = s.variables().iter().all(|v| is_laurent(v).is_some());
    Ok(object(
        "cluster mutate",
        json!({
            "path": path,
            "variables": vars,
            "b": s.exchange_matrix(),
            "laurent": laurent,
        }),
    ))
}

fn cluster_orbit(rank: usize, b: &str, depth: usize, budget: usize) -> Result<Value> {
    let seed = ClusterSeed::initial(exchange_matrix(rank, b)?)?;
    let o = mutation_orbit(&seed, depth, budget)?;
    Ok(object(
        "cluster orbit",
        json!({
            "depth": depth,
            "variables": strings(&o.variables),
            "count": o.variables.len(),
            "seeds": o.seeds,
            "truncated": o.truncated,
            "laurent": o.all_laurent(),
            "positive_coefficients": o.positive,
        }),
    ))
}

fn classify(x: &str, surface: (u32, u32), horizon: usize) -> Result<Value> {
    let cf = fraction(x)?;
    let r = classification_correspondence(&cf, surface_of(surface)?, horizon)?;
    let kind = match &r.cf_kind {
        CfKind::Finite { length } => json!({ "kind": "finite", "length": length }),
        CfKind::Periodic { preperiod, period } => {
            json!({ "kind": "periodic", "preperiod": preperiod, "period": period })
        }
        CfKind::Stream { declared_aperiodic } => json!({ "kind": "stream", "declared_aperiodic": declared_aperiodic }),
    };
    let k0: Vec<Value> = r
        .k0
        .iter()
        .map(|(t, g)| merge(json!({ "truncation": t }), group_json(g)))
        .collect();
    let checks: Map<String, Value> = r.checks.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    Ok(object(
        "classify",
        json!({
            "input": x,
            "cf": r.cf.to_string(),
            "cf_shape": kind,
            "blocks": period_json(&r.blocks),
            "k0": k0,
            "domain": r.domain.to_string(),
            "image": r.image.to_string(),
            "value": r.value.as_ref().map(|v| v.to_string()),
            "value_approx": r.value.as_ref().map(approx),
            "checks": checks,
            "consistent": r.all_hold(),
        }),
    ))
}
