//! Gnuplot scripts for emitted data files. Scripts name their data files
//! relative to their own directory and write a PNG next to themselves.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use hweno_bench::Snapshot;

use crate::CliError;

/// Contour levels of 2D density plots.
pub const CONTOUR_LEVELS: usize = 30;

fn quoted(path: &Path) -> String {
    format!("'{}'", path.display().to_string().replace('\'', "''"))
}

/// Line plot of each component (1D) or filled density contours (2D) of a
/// table written by [`crate::write_snapshot`].
pub fn snapshot_plot_script(snapshot: &Snapshot, data: &Path, image: &Path) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 1200,{}", if snapshot.is_2d() { 600 } else { 800 });
    let _ = writeln!(s, "set output {}", quoted(image));
    let _ = writeln!(s, "set title '{} t = {}'", snapshot.problem, snapshot.time);
    let _ = writeln!(s, "set xlabel 'x'");
    if snapshot.is_2d() {
        let column = snapshot.components.iter().position(|c| c == "rho").unwrap_or(0) + 3;
        let (x0, x1) = snapshot.x_range;
        let (y0, y1) = snapshot.y_range.unwrap_or((0.0, 1.0));
        let _ = writeln!(s, "set ylabel 'y'");
        let _ = writeln!(s, "set xrange [{x0}:{x1}]");
        let _ = writeln!(s, "set yrange [{y0}:{y1}]");
        let _ = writeln!(s, "set size ratio -1");
        let _ = writeln!(s, "set view map");
        let _ = writeln!(s, "set contour base");
        let _ = writeln!(s, "set cntrparam levels {CONTOUR_LEVELS}");
        let _ = writeln!(s, "unset surface");
        let _ = writeln!(s, "unset key");
        let _ = writeln!(s, "set pm3d at b");
        let _ = writeln!(s, "set palette rgbformulae 33,13,10");
        let _ = writeln!(
            s,
            "splot {} using 1:2:{column} with pm3d, '' using 1:2:{column} with lines lc rgb 'black'",
            quoted(data)
        );
    } else {
        let _ = writeln!(s, "set key outside");
        let series: Vec<String> = snapshot
            .components
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let source = if k == 0 { quoted(data) } else { "''".to_string() };
                format!("{source} using 1:{} with linespoints pointtype 6 title '{c}'", k + 2)
            })
            .collect();
        let _ = writeln!(s, "set multiplot layout {},1", snapshot.components.len());
        for line in series {
            let _ = writeln!(s, "plot {line}");
        }
        let _ = writeln!(s, "unset multiplot");
    }
    s
}

/// Log-log error against CPU time, one series per `(label, table)` pair.
/// Tables have the layout of `ErrorReport::to_table`: `N L1 order Linf order seconds`.
pub fn error_plot_script(series: &[(&str, &Path)], image: &Path) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 1200,500");
    let _ = writeln!(s, "set output {}", quoted(image));
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set format y '10^{{%L}}'");
    let _ = writeln!(s, "set xlabel 'CPU time (s)'");
    let _ = writeln!(s, "set multiplot layout 1,2");
    for (column, norm) in [(2, "L1"), (4, "Linf")] {
        let _ = writeln!(s, "set ylabel '{norm} error'");
        let plots: Vec<String> = series
            .iter()
            .map(|(label, table)| {
                format!(
                    "{} using 6:{column} with linespoints pointtype 7 title '{}'",
                    quoted(table),
                    label.replace('\'', "''")
                )
            })
            .collect();
        let _ = writeln!(s, "plot {}", plots.join(", "));
    }
    let _ = writeln!(s, "unset multiplot");
    s
}

fn write_script(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// File name of the image a script at `path` writes.
fn image_name(path: &Path) -> PathBuf {
    PathBuf::from(path.with_extension("png").file_name().unwrap_or_default())
}

/// Writes the script for `snapshot` to `path`; `data` is relative to the
/// script's directory.
pub fn emit_snapshot_plot(snapshot: &Snapshot, data: &Path, path: &Path) -> Result<(), CliError> {
    write_script(path, &snapshot_plot_script(snapshot, data, &image_name(path)))
}

pub fn emit_error_plot(series: &[(&str, &Path)], path: &Path) -> Result<(), CliError> {
    write_script(path, &error_plot_script(series, &image_name(path)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hweno_bench::ProblemName;

    fn snapshot(two_d: bool) -> Snapshot {
        Snapshot {
            problem: if two_d { ProblemName::DoubleMach } else { ProblemName::ShuOsher },
            time: 0.2,
            x_range: (0.0, 4.0),
            y_range: two_d.then_some((0.0, 1.0)),
            nx: 4,
            ny: if two_d { 2 } else { 1 },
            components: vec!["rho".into(), "u".into(), "p".into()],
            values: vec![vec![1.0; 8]; 3],
        }
    }

    #[test]
    fn contour_script_has_thirty_levels() {
        let text = snapshot_plot_script(&snapshot(true), Path::new("solution.dat"), Path::new("solution.png"));
        assert!(text.contains("set cntrparam levels 30"));
        assert!(text.contains("'solution.dat' using 1:2:3"));
    }

    #[test]
    fn line_script_plots_every_component() {
        let text = snapshot_plot_script(&snapshot(false), Path::new("solution.dat"), Path::new("solution.png"));
        assert!(!text.contains("contour"));
        for (k, c) in ["rho", "u", "p"].iter().enumerate() {
            assert!(text.contains(&format!("using 1:{} with linespoints pointtype 6 title '{c}'", k + 2)));
        }
    }

    #[test]
    fn error_script_is_log_log_with_one_series_each() {
        let text = error_plot_script(
            &[("gamma0=0.95", Path::new("a.dat")), ("linear weights", Path::new("b.dat"))],
            Path::new("errors.png"),
        );
        assert!(text.contains("set logscale xy"));
        assert_eq!(text.matches("'a.dat' using 6:").count(), 2);
        assert_eq!(text.matches("'b.dat' using 6:").count(), 2);
    }
}
