//! Point clouds on the slice `|x|_1 = 1` and their CSV form.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::forms::{NormalizationData, NormalizedPoint};

/// Points stored column-wise with cached `B(x, x)`, a depth (or word length)
/// label and a component label (`-1` when not applicable).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    qvalue: Vec<f64>,
    depth: Vec<u32>,
    component: Vec<i32>,
}

impl PointCloud {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            ..Self::default()
        }
    }

    pub fn with_capacity(dim: usize, cap: usize) -> Self {
        Self {
            dim,
            coords: Vec::with_capacity(cap * dim),
            qvalue: Vec::with_capacity(cap),
            depth: Vec::with_capacity(cap),
            component: Vec::with_capacity(cap),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.qvalue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qvalue.is_empty()
    }

    pub fn push(&mut self, x: &[f64], qvalue: f64, depth: usize, component: i32) {
        assert_eq!(x.len(), self.dim);
        self.coords.extend_from_slice(x);
        self.qvalue.push(qvalue);
        self.depth.push(depth as u32);
        self.component.push(component);
    }

    pub fn push_point(&mut self, p: &NormalizedPoint, depth: usize, component: i32) {
        self.push(&p.coords, p.qvalue, depth, component);
    }

    pub fn extend(&mut self, other: &PointCloud) {
        assert_eq!(self.dim, other.dim);
        self.coords.extend_from_slice(&other.coords);
        self.qvalue.extend_from_slice(&other.qvalue);
        self.depth.extend_from_slice(&other.depth);
        self.component.extend_from_slice(&other.component);
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    pub fn normalized(&self, k: usize) -> NormalizedPoint {
        NormalizedPoint {
            coords: self.point(k).to_vec(),
            qvalue: self.qvalue[k],
        }
    }

    pub fn qvalue(&self, k: usize) -> f64 {
        self.qvalue[k]
    }

    pub fn depth(&self, k: usize) -> usize {
        self.depth[k] as usize
    }

    pub fn component(&self, k: usize) -> i32 {
        self.component[k]
    }

    pub fn set_component(&mut self, c: i32) {
        self.component.iter_mut().for_each(|x| *x = c);
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Sub-cloud of the indices accepted by `keep`, in order.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> PointCloud {
        let idx: Vec<usize> = (0..self.len()).filter(|&k| keep(k)).collect();
        self.select(&idx)
    }

    pub fn select(&self, idx: &[usize]) -> PointCloud {
        let mut out = PointCloud::with_capacity(self.dim, idx.len());
        for &k in idx {
            out.push(
                self.point(k),
                self.qvalue[k],
                self.depth(k),
                self.component[k],
            );
        }
        out
    }

    /// Every `stride`-th point starting at `offset`.
    pub fn thin(&self, stride: usize, offset: usize) -> PointCloud {
        let stride = stride.max(1);
        self.filter(|k| k % stride == offset % stride)
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for p in self.points() {
            for (a, b) in c.iter_mut().zip(p) {
                *a += b;
            }
        }
        let n = self.len().max(1) as f64;
        c.iter_mut().for_each(|a| *a /= n);
        c
    }

    /// Writes `#` comment lines, the header `depth,q,x1..xn,b1..bn[,component]`
    /// and one row per point. Barycentric coordinates are `b_i = x_i o_i`.
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        nd: &NormalizationData,
        comments: &[String],
        with_component: bool,
    ) -> Result<()> {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        let n = self.dim;
        let mut header = vec!["depth".to_string(), "q".to_string()];
        header.extend((1..=n).map(|i| format!("x{i}")));
        header.extend((1..=n).map(|i| format!("b{i}")));
        if with_component {
            header.push("component".into());
        }
        w.write_record(&header).map_err(csv_err)?;
        let o = nd.o();
        let mut row = Vec::with_capacity(header.len());
        for k in 0..self.len() {
            row.clear();
            row.push(self.depth[k].to_string());
            row.push(format!("{:.16e}", self.qvalue[k]));
            let p = self.point(k);
            row.extend(p.iter().map(|x| format!("{x:.16e}")));
            row.extend(p.iter().zip(o).map(|(x, oi)| format!("{:.16e}", x * oi)));
            if with_component {
                row.push(self.component[k].to_string());
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a cloud written by [`Self::write_csv`]; barycentric columns are ignored.
    pub fn read_csv<R: Read>(input: R) -> Result<PointCloud> {
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(input);
        let header = r.headers().map_err(csv_err)?.clone();
        let col = |name: &str| header.iter().position(|h| h == name);
        let depth_col = col("depth").ok_or_else(|| Error::MissingInput("depth column".into()))?;
        let q_col = col("q").ok_or_else(|| Error::MissingInput("q column".into()))?;
        let comp_col = col("component");
        let xs: Vec<usize> = (1..).map_while(|i| col(&format!("x{i}"))).collect();
        let mut cloud = PointCloud::new(xs.len());
        let mut x = vec![0.0; xs.len()];
        for rec in r.records() {
            let rec = rec.map_err(csv_err)?;
            let num = |c: usize| -> Result<f64> {
                rec[c]
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad number {:?}", &rec[c])))
            };
            for (slot, &c) in x.iter_mut().zip(&xs) {
                *slot = num(c)?;
            }
            let depth = num(depth_col)? as usize;
            let comp = match comp_col {
                Some(c) => num(c)? as i32,
                None => -1,
            };
            cloud.push(&x, num(q_col)?, depth, comp);
        }
        Ok(cloud)
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidSpec(format!("csv: {other:?}")),
    }
}
