//! Wire formats: the JSON shapes consumed and produced by the CLI.
//!
//! Numbers are IEEE doubles; serde_json prints the shortest representation
//! that round-trips, which carries at least the required 15 significant
//! digits.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{Complex, Mat2};
use crate::maps::{FoliatedRegion, PlMap, PlPiece, StretchLocus};
use crate::metric::Hexagon;
use crate::moduli::{PairClass, PairKind, SectorTag};
use crate::triangle::{LabeledTriangle, RegionTag, ShapePoint, Vertex};
use crate::Result;

/// `{"va":[x,y],"vb":[x,y],"vc":[x,y]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleJson {
    pub va: [f64; 2],
    pub vb: [f64; 2],
    pub vc: [f64; 2],
}

impl From<&LabeledTriangle> for TriangleJson {
    fn from(t: &LabeledTriangle) -> Self {
        let p = |z: Complex| [z.re, z.im];
        TriangleJson {
            va: p(t.va()),
            vb: p(t.vb()),
            vc: p(t.vc()),
        }
    }
}

impl TryFrom<TriangleJson> for LabeledTriangle {
    type Error = Error;

    fn try_from(j: TriangleJson) -> Result<Self> {
        let c = |p: [f64; 2]| Complex::new(p[0], p[1]);
        LabeledTriangle::new(c(j.va), c(j.vb), c(j.vc))
    }
}

/// `{"re":x,"im":y}`
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ShapePointJson {
    pub re: f64,
    pub im: f64,
}

impl From<ShapePoint> for ShapePointJson {
    fn from(z: ShapePoint) -> Self {
        ShapePointJson {
            re: z.re(),
            im: z.im(),
        }
    }
}

impl TryFrom<ShapePointJson> for ShapePoint {
    type Error = Error;

    fn try_from(j: ShapePointJson) -> Result<Self> {
        ShapePoint::from_parts(j.re, j.im)
    }
}

/// `{"vertex":"a|b|c","kind":"pencil|backward","k1":x,"k2":y}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairClassJson {
    pub vertex: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
}

impl From<PairClass> for PairClassJson {
    fn from(c: PairClass) -> Self {
        PairClassJson {
            vertex: c.vertex.letter().to_string(),
            kind: match c.kind {
                PairKind::Pencil => "pencil".into(),
                PairKind::BackwardPencil => "backward".into(),
            },
            k1: c.witness.map(|w| w.0),
            k2: c.witness.map(|w| w.1),
        }
    }
}

/// Sector tag in the same vertex/kind vocabulary as pair classes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorJson {
    pub vertex: String,
    pub kind: String,
}

impl From<SectorTag> for SectorJson {
    fn from(s: SectorTag) -> Self {
        SectorJson {
            vertex: s.vertex.letter().to_string(),
            kind: if s.backward { "backward" } else { "pencil" }.into(),
        }
    }
}

pub fn region_name(tag: RegionTag) -> String {
    match tag {
        RegionTag::Acute => "acute".into(),
        RegionTag::RightAt(v) => format!("right_at_{}", v.letter()),
        RegionTag::ObtuseAt(v) => format!("obtuse_at_{}", v.letter()),
    }
}

pub fn vertex_from_str(s: &str) -> Result<Vertex> {
    match s {
        "a" => Ok(Vertex::A),
        "b" => Ok(Vertex::B),
        "c" => Ok(Vertex::C),
        _ => Err(Error::InvalidInput(format!("unknown vertex {s:?}"))),
    }
}

/// `{"center":[0,0],"vertices":[[x,y] x 6]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HexagonJson {
    pub center: [f64; 2],
    pub vertices: Vec<[f64; 2]>,
}

impl From<&Hexagon> for HexagonJson {
    fn from(h: &Hexagon) -> Self {
        HexagonJson {
            center: [0.0, 0.0],
            vertices: h.vertices().iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

/// One PL piece:
/// `{"tri":[[x,y] x 3],"lin":[[m11,m12],[m21,m22]],"tr":[tx,ty],"conj":bool}`.
///
/// Orientation-reversing pieces store the matrix of the composition with
/// conjugation, so the acting map is `lin * (x, -y) + tr` when `conj`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlPieceJson {
    pub tri: [[f64; 2]; 3],
    pub lin: [[f64; 2]; 2],
    pub tr: [f64; 2],
    pub conj: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlMapJson {
    pub pieces: Vec<PlPieceJson>,
}

impl From<&PlPiece> for PlPieceJson {
    fn from(p: &PlPiece) -> Self {
        let j = p.jacobian();
        let conj = p.det() < 0.0;
        let m = if conj { j.mul(&Mat2::CONJ) } else { j };
        PlPieceJson {
            tri: p.tri().map(|v| [v.re, v.im]),
            lin: [[m.0[0], m.0[1]], [m.0[2], m.0[3]]],
            tr: [p.tau().re, p.tau().im],
            conj,
        }
    }
}

impl TryFrom<&PlPieceJson> for PlPiece {
    type Error = Error;

    fn try_from(j: &PlPieceJson) -> Result<Self> {
        let m = Mat2([j.lin[0][0], j.lin[0][1], j.lin[1][0], j.lin[1][1]]);
        let jac = if j.conj { m.mul(&Mat2::CONJ) } else { m };
        let [a, b, c, d] = jac.0;
        let alpha = Complex::new(0.5 * (a + d), 0.5 * (c - b));
        let beta = Complex::new(0.5 * (a - d), 0.5 * (c + b));
        let tri = j.tri.map(|p| Complex::new(p[0], p[1]));
        Ok(PlPiece::new(
            tri,
            alpha,
            beta,
            Complex::new(j.tr[0], j.tr[1]),
        ))
    }
}

impl From<&PlMap> for PlMapJson {
    fn from(m: &PlMap) -> Self {
        PlMapJson {
            pieces: m.pieces().iter().map(PlPieceJson::from).collect(),
        }
    }
}

impl TryFrom<&PlMapJson> for PlMap {
    type Error = Error;

    fn try_from(j: &PlMapJson) -> Result<Self> {
        PlMap::new(
            j.pieces
                .iter()
                .map(PlPiece::try_from)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoliatedRegionJson {
    pub region: Vec<[f64; 2]>,
    pub leaf_dir: [f64; 2],
    pub vertex: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StretchLocusJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanding: Option<Vec<[f64; 2]>>,
    pub foliated: Vec<FoliatedRegionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<[f64; 2]>>,
    pub p: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<[f64; 2]>,
}

fn pts(v: &[Complex]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl From<&StretchLocus> for StretchLocusJson {
    fn from(l: &StretchLocus) -> Self {
        let kind = match l.kind {
            crate::maps::LocusKind::G(v) => format!("G_{}", v.letter()),
            crate::maps::LocusKind::F { v, vprime, theta } => {
                format!("F_{}^{},{}", v.letter(), vprime.letter(), theta)
            }
        };
        let fol = |f: &FoliatedRegion| FoliatedRegionJson {
            region: pts(&f.region),
            leaf_dir: [f.leaf_dir.re, f.leaf_dir.im],
            vertex: f.vertex.letter().to_string(),
        };
        StretchLocusJson {
            kind,
            expanding: l.expanding.as_ref().map(|e| pts(e)),
            foliated: l.foliated.iter().map(fol).collect(),
            residual: l.residual.as_ref().map(|r| pts(r)),
            p: [l.p.re, l.p.im],
            q: l.q.map(|q| [q.re, q.im]),
            r: l.r.map(|r| [r.re, r.im]),
        }
    }
}
