//! The tiling document: a JSON encoding of a torus tiling that round-trips
//! byte for byte.
//!
//! Keys appear in a fixed order and every number is written with 17
//! significant digits, which identifies an `f64` exactly.

use std::io;

use hextorus::construct::{Provenance, TorusTiling};
use hextorus::geom::{Point2, Polygon};
use hextorus::lattice::Lattice;
use hextorus::validate::ValidationReport;
use hextorus::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDocument {
    pub format_version: u32,
    pub lattice: LatticeDoc,
    pub tiles: Vec<TileDoc>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDoc {
    pub corners: Vec<[f64; 2]>,
    pub labels: Vec<usize>,
}

/// Pretty printing with exact, fixed-width floats.
struct ExactFloats(PrettyFormatter<'static>);

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if !value.is_finite() {
            return Err(io::Error::new(io::ErrorKind::InvalidData, format!("{value} is not representable")));
        }
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn doc_error(field: impl Into<String>, message: impl ToString) -> Error {
    Error::Document {
        field: field.into(),
        message: message.to_string(),
    }
}

impl TilingDocument {
    pub fn from_tiling(t: &TorusTiling, validation: Option<ValidationReport>) -> Self {
        TilingDocument {
            format_version: FORMAT_VERSION,
            lattice: LatticeDoc {
                alpha: pair(t.lattice.alpha),
                beta: pair(t.lattice.beta),
            },
            tiles: t
                .tiles
                .iter()
                .map(|p| TileDoc {
                    corners: p.corners().iter().map(|c| [c.x, c.y]).collect(),
                    labels: p.labels().to_vec(),
                })
                .collect(),
            provenance: t.provenance.clone(),
            validation,
        }
    }

    /// The tiling described by the document. Geometry is not checked beyond
    /// what a polygon needs; that is the validator's job.
    pub fn to_tiling(&self) -> Result<TorusTiling> {
        let [a, b] = [self.lattice.alpha, self.lattice.beta].map(|[x, y]| Complex64::new(x, y));
        let lattice = Lattice::new(a, b).map_err(|e| doc_error("lattice", e))?;
        if self.tiles.is_empty() {
            return Err(doc_error("tiles", "no tiles"));
        }
        let tiles = self
            .tiles
            .iter()
            .enumerate()
            .map(|(k, tile)| {
                let n = tile.corners.len();
                let mut seen = tile.labels.clone();
                seen.sort_unstable();
                if seen != (0..n).collect::<Vec<_>>() {
                    return Err(doc_error(format!("tiles[{k}].labels"), format!("not a permutation of 0..{n}")));
                }
                let corners = tile.corners.iter().map(|&[x, y]| Point2::new(x, y)).collect();
                Polygon::with_labels(corners, tile.labels.clone()).map_err(|e| doc_error(format!("tiles[{k}].corners"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusTiling {
            lattice,
            tiles,
            provenance: self.provenance.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
        self.serialize(&mut ser).map_err(|e| doc_error("document", e))?;
        buf.push(b'\n');
        Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TilingDocument = serde_json::from_str(text)
            .map_err(|e| doc_error(format!("line {} column {}", e.line(), e.column()), e))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(doc_error(
                "format_version",
                format!("unsupported version {} (expected {FORMAT_VERSION})", doc.format_version),
            ));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hextorus::construct::type_iii_minimal;

    #[test]
    fn floats_are_exact() {
        let t = type_iii_minimal(Point2::new(0.1, 1.0 / 3.0)).unwrap();
        let doc = TilingDocument::from_tiling(&t, None);
        let text = doc.to_json().unwrap();
        let back = TilingDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json().unwrap(), text);
        let u = back.to_tiling().unwrap();
        assert_eq!((u.lattice, &u.provenance), (t.lattice, &t.provenance));
        for (a, b) in u.tiles.iter().zip(&t.tiles) {
            assert_eq!((a.corners(), a.labels()), (b.corners(), b.labels()));
        }
    }

    #[test]
    fn errors_name_the_field() {
        let t = type_iii_minimal(Point2::new(0.0, 0.0)).unwrap();
        let mut doc = TilingDocument::from_tiling(&t, None);
        doc.tiles[1].labels[0] = doc.tiles[1].labels[1];
        match doc.to_tiling() {
            Err(Error::Document { field, .. }) => assert_eq!(field, "tiles[1].labels"),
            other => panic!("{other:?}"),
        }
        match TilingDocument::from_json("{\n  \"format_version\": 1,\n  \"lattice\": 3\n}") {
            Err(Error::Document { field, .. }) => assert!(field.starts_with("line 3"), "{field}"),
            other => panic!("{other:?}"),
        }
    }
}
