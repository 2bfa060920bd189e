use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use bnp_core::ingest::{
    load_config, load_elevation_grid, load_feature_layer, load_network, validate_inputs, EvaluationConfig,
    IngestError, LayerKind,
};
use bnp_core::pipeline::{load_inputs, Evaluation, Inputs};
use bnp_core::report::{
    components_layer, coverage_layer, edges_layer, evaluation_maps, input_layer, loops_layer, network_layers,
    overview_map, point_layers, slope_layer, summarize, write_atomic, write_layers, write_svg, GeoLayer, StyleSpec,
    LAYERS_DIR, MAPS_DIR, STATS_DIR,
};

use crate::Step;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Input(IngestError),
    Io(PathBuf, io::Error),
    Validation(String),
    MissingInput(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 3,
            Failure::Input(e) if e.is_parse_error() => 2,
            Failure::Io(..) => 2,
            Failure::Input(_) | Failure::Validation(_) | Failure::MissingInput(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "config: {m}"),
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Validation(m) | Failure::MissingInput(m) => f.write_str(m),
        }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        Failure::Input(e)
    }
}

pub struct RunContext {
    config: EvaluationConfig,
    out_dir: PathBuf,
    quiet: bool,
    style: StyleSpec,
    inputs: Option<Inputs>,
    eval: Option<Evaluation>,
}

impl RunContext {
    pub fn new(config_path: &Path, out: Option<&Path>, quiet: bool) -> Result<Self, Failure> {
        let config = load_config(config_path).map_err(|e| Failure::Config(format!("{}: {e}", config_path.display())))?;
        let out_dir = out
            .map(Path::to_path_buf)
            .or_else(|| config.output_dir.clone())
            .unwrap_or_else(|| PathBuf::from("output"));
        std::fs::create_dir_all(&out_dir).map_err(|e| Failure::Io(out_dir.clone(), e))?;
        let ctx = RunContext {
            style: StyleSpec::with_overrides(&config.style),
            config,
            out_dir,
            quiet,
            inputs: None,
            eval: None,
        };
        for w in &ctx.config.warnings {
            ctx.log(&format!("config warning: {w}"));
        }
        Ok(ctx)
    }

    fn log(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    pub fn run(&mut self, step: Step) -> Result<(), Failure> {
        match step {
            Step::Validate => self.validate(),
            Step::Show => self.show(),
            Step::Access => self.access(true),
            Step::Slope => self.slope(true),
            Step::Components => self.components(),
            Step::Edges => self.edges(),
            Step::Loops => self.loops(),
            Step::Summary => self.summary(),
            Step::Export => self.export(),
            Step::All => {
                self.validate()?;
                self.show()?;
                self.access(false)?;
                self.slope(false)?;
                self.components()?;
                self.edges()?;
                self.loops()?;
                self.summary()?;
                self.export()
            }
        }
    }

    fn inputs(&mut self) -> Result<&Inputs, Failure> {
        if self.inputs.is_none() {
            self.log("loading inputs");
            self.inputs = Some(load_inputs(&self.config)?);
        }
        Ok(self.inputs.as_ref().unwrap())
    }

    fn evaluation(&mut self) -> Result<&mut Evaluation, Failure> {
        if self.eval.is_none() {
            let network = self.inputs()?.network.clone();
            self.eval = Some(Evaluation::new(network, &self.config));
        }
        Ok(self.eval.as_mut().unwrap())
    }

    fn write_layers(&self, layers: &[GeoLayer]) -> Result<(), Failure> {
        let dir = self.out_dir.join(LAYERS_DIR);
        let paths = write_layers(&dir, layers).map_err(|e| Failure::Io(dir.clone(), e))?;
        for p in paths {
            self.log(&format!("  wrote {}", p.display()));
        }
        Ok(())
    }

    fn write_file(&self, path: PathBuf, contents: &[u8]) -> Result<(), Failure> {
        write_atomic(&path, contents).map_err(|e| Failure::Io(path.clone(), e))?;
        self.log(&format!("  wrote {}", path.display()));
        Ok(())
    }

    fn validate(&mut self) -> Result<(), Failure> {
        self.log("[0] validate inputs");
        let cfg = &self.config;
        let network = load_network(&cfg.nodes_path, &cfg.edges_path, cfg.snap_tolerance_m);
        let load = |specs: &[bnp_core::ingest::LayerSpec], kind| {
            specs
                .iter()
                .map(|s| (s.clone(), load_feature_layer(&s.path, kind, &s.name, s.buffer_m)))
                .collect::<Vec<_>>()
        };
        let points = load(&cfg.point_layers, LayerKind::Point);
        let polygons = load(&cfg.polygon_layers, LayerKind::Polygon);
        let grid = cfg.elevation_path.as_deref().map(load_elevation_grid);
        let report = validate_inputs(cfg, &network, &points, &polygons, grid.as_ref());
        print!("{report}");
        if report.passed {
            Ok(())
        } else {
            Err(Failure::Validation("input validation failed".into()))
        }
    }

    fn show(&mut self) -> Result<(), Failure> {
        self.log("[1] show input network and study area");
        let inputs = self.inputs()?;
        let mut layers = network_layers(&inputs.network);
        layers.extend(inputs.point_layers.iter().chain(&inputs.polygon_layers).map(input_layer));
        let map = overview_map(&inputs.network, &inputs.point_layers, &inputs.polygon_layers);
        self.write_layers(&layers)?;
        self.write_map("overview.svg", &map)
    }

    fn write_map(&self, name: &str, map: &bnp_core::report::MapDocument) -> Result<(), Failure> {
        let path = self.out_dir.join(MAPS_DIR).join(name);
        write_svg(map, &self.style, &path).map_err(|e| Failure::Io(path.clone(), e))?;
        self.log(&format!("  wrote {}", path.display()));
        Ok(())
    }

    /// Runs access analysis if it has not run yet. Returns false when no
    /// point or polygon layer is configured.
    fn ensure_access(&mut self) -> Result<bool, Failure> {
        if self.config.point_layers.is_empty() && self.config.polygon_layers.is_empty() {
            return Ok(false);
        }
        let done = self.eval.as_ref().is_some_and(|e| !e.points.is_empty() || !e.polygons.is_empty());
        if !done {
            self.inputs()?;
            self.evaluation()?;
            let inputs = self.inputs.as_ref().unwrap();
            let ev = self.eval.as_mut().unwrap();
            ev.run_access(&inputs.point_layers, &inputs.polygon_layers, &self.config);
        }
        Ok(true)
    }

    fn ensure_slope(&mut self) -> Result<bool, Failure> {
        if self.config.elevation_path.is_none() {
            return Ok(false);
        }
        if self.eval.as_ref().is_none_or(|e| e.slopes.is_none()) {
            self.inputs()?;
            self.evaluation()?;
            let grid = self.inputs.as_ref().unwrap().grid.as_ref().expect("grid loaded with inputs");
            self.eval.as_mut().unwrap().run_slope(grid, &self.config);
        }
        Ok(true)
    }

    fn ensure_components(&mut self) -> Result<(), Failure> {
        let ev = self.evaluation()?;
        if ev.components.is_none() {
            ev.run_components();
        }
        Ok(())
    }

    fn ensure_edges(&mut self) -> Result<(), Failure> {
        let ev = self.evaluation()?;
        if ev.edges.is_none() {
            ev.run_edges();
        }
        Ok(())
    }

    fn ensure_loops(&mut self) -> Result<(), Failure> {
        let ev = self.evaluation()?;
        if ev.loops.is_none() {
            ev.run_loops();
        }
        Ok(())
    }

    fn access(&mut self, explicit: bool) -> Result<(), Failure> {
        self.log("[2] access to points and polygons");
        if !self.ensure_access()? {
            let msg = "access: no point or polygon layers configured";
            return if explicit {
                Err(Failure::MissingInput(msg.into()))
            } else {
                self.log(&format!("  skipped: {msg}"));
                Ok(())
            };
        }
        let ev = self.eval.as_ref().unwrap();
        let mut layers = Vec::new();
        for p in &ev.points {
            layers.extend(point_layers(p));
        }
        for c in &ev.polygons {
            layers.push(coverage_layer(&ev.network, c));
        }
        self.write_layers(&layers)
    }

    fn slope(&mut self, explicit: bool) -> Result<(), Failure> {
        self.log("[3] slope");
        if !self.ensure_slope()? {
            let msg = "slope: no elevation grid configured (set `elevation` in [general])";
            return if explicit {
                Err(Failure::MissingInput(msg.into()))
            } else {
                self.log(&format!("  skipped: {msg}"));
                Ok(())
            };
        }
        let ev = self.eval.as_ref().unwrap();
        let layer = slope_layer(&ev.network, ev.slopes.as_ref().unwrap());
        self.write_layers(&[layer])
    }

    fn components(&mut self) -> Result<(), Failure> {
        self.log("[4] components");
        self.ensure_components()?;
        let layer = components_layer(self.eval.as_ref().unwrap()).unwrap();
        self.write_layers(&[layer])
    }

    fn edges(&mut self) -> Result<(), Failure> {
        self.log("[5] edge lengths");
        self.ensure_edges()?;
        let layer = edges_layer(self.eval.as_ref().unwrap()).unwrap();
        self.write_layers(&[layer])
    }

    fn loops(&mut self) -> Result<(), Failure> {
        self.log("[6] loop lengths");
        self.ensure_loops()?;
        let layer = loops_layer(self.eval.as_ref().unwrap()).unwrap();
        self.write_layers(&[layer])
    }

    /// Runs every analysis whose input is configured, noting the skipped ones.
    fn ensure_all(&mut self) -> Result<(), Failure> {
        if !self.ensure_access()? {
            self.log("  skipped access: no point or polygon layers configured");
        }
        if !self.ensure_slope()? {
            self.log("  skipped slope: no elevation grid configured");
        }
        self.ensure_components()?;
        self.ensure_edges()?;
        self.ensure_loops()
    }

    fn summary(&mut self) -> Result<(), Failure> {
        self.log("[7] summary statistics");
        self.ensure_all()?;
        let doc = summarize(self.eval.as_ref().unwrap());
        let dir = self.out_dir.join(STATS_DIR);
        self.write_file(dir.join("summary.json"), doc.to_json().as_bytes())?;
        self.write_file(dir.join("summary.txt"), doc.to_text().as_bytes())
    }

    fn export(&mut self) -> Result<(), Failure> {
        self.log("[8] export maps");
        self.ensure_all()?;
        let maps = evaluation_maps(self.eval.as_ref().unwrap(), &self.inputs.as_ref().unwrap().polygon_layers);
        for (name, map) in &maps {
            self.write_map(name, map)?;
        }
        Ok(())
    }
}
