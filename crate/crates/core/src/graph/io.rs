//! Line-oriented stream files and the JSON metadata sidecar.
//!
//! ```text
//! # comment
//! n <vertex_count> <ins|rand|dyn>
//! e <u> <v> <+1|-1>
//! ```

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use super::generators::{PlantedInstance, PlantedMetadata};
use super::{Edge, EdgeEvent, GraphStream, StreamKind};
use crate::error::{Error, Result};

pub fn write_stream<W: Write>(stream: &GraphStream, mut w: W) -> Result<()> {
    writeln!(w, "# header")?;
    writeln!(w, "n {} {}", stream.n, stream.kind.tag())?;
    for ev in &stream.events {
        let sign = if ev.delta > 0 { "+1" } else { "-1" };
        writeln!(w, "e {} {} {}", ev.edge.u, ev.edge.v, sign)?;
    }
    Ok(())
}

pub fn read_stream<R: Read>(r: R) -> Result<GraphStream> {
    let mut header: Option<(u32, StreamKind)> = None;
    let mut events = Vec::new();
    for (lineno, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::StreamValidity {
            index: events.len(),
            reason: format!("line {}: {reason}", lineno + 1),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["n", count, kind] => {
                if header.is_some() {
                    return Err(bad("duplicate header".into()));
                }
                let n = count.parse().map_err(|_| bad(format!("bad vertex count `{count}`")))?;
                let kind = StreamKind::from_tag(kind).ok_or_else(|| bad(format!("unknown kind `{kind}`")))?;
                header = Some((n, kind));
            }
            ["e", u, v, d] => {
                if header.is_none() {
                    return Err(bad("edge record before header".into()));
                }
                let u = u.parse().map_err(|_| bad(format!("bad vertex `{u}`")))?;
                let v = v.parse().map_err(|_| bad(format!("bad vertex `{v}`")))?;
                let delta = match *d {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    other => return Err(bad(format!("bad delta `{other}`"))),
                };
                let edge = Edge::new(u, v).map_err(|e| bad(e.to_string()))?;
                events.push(EdgeEvent { edge, delta });
            }
            _ => return Err(bad(format!("unrecognized record `{line}`"))),
        }
    }
    let (n, kind) = header.ok_or_else(|| Error::StreamValidity {
        index: 0,
        reason: "missing `n` header".into(),
    })?;
    Ok(GraphStream::new(n, kind, events))
}

/// Sidecar path for a stream file: the same path with a `.json` extension.
pub fn sidecar_path(stream_path: &Path) -> PathBuf {
    stream_path.with_extension("json")
}

pub fn save_instance(inst: &PlantedInstance, stream_path: &Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(stream_path)?);
    write_stream(&inst.stream, &mut f)?;
    f.flush()?;
    let meta = serde_json::to_string_pretty(&inst.metadata())?;
    fs::write(sidecar_path(stream_path), meta + "\n")?;
    Ok(())
}

pub fn load_stream(path: &Path) -> Result<GraphStream> {
    read_stream(fs::File::open(path)?)
}

/// Loads a stream and, when present, its sidecar; without one the optimum is unknown.
pub fn load_instance(stream_path: &Path) -> Result<PlantedInstance> {
    let stream = load_stream(stream_path)?;
    let side = sidecar_path(stream_path);
    let meta = if side.exists() {
        serde_json::from_str(&fs::read_to_string(side)?)?
    } else {
        PlantedMetadata {
            opt_value: 0,
            opt_is_exact: false,
            opt_assignment: None,
        }
    };
    Ok(PlantedInstance::from_parts(stream, meta))
}
