//! gnuplot scripts for the emitted tables (data only; no rendering here).

use crate::config::ExperimentKind;

fn header(title: &str) -> String {
    format!("# gnuplot -p plot.gp\nset datafile separator ','\nset key autotitle columnhead\nset title '{title}'\nset xlabel 't'\n")
}

/// Script plotting `data` against `oracle` (column names as in the CSVs).
pub fn gnuplot_script(kind: ExperimentKind, data: &str, oracle: Option<&str>) -> String {
    let mut s = header(kind.name());
    let o = oracle.unwrap_or(data);
    let body = match kind {
        ExperimentKind::Loschmidt => format!(
            "set multiplot layout 2,1\n\
             plot '{data}' using 't':'re':'sigma_re' with yerrorbars title 'Re L', \
             '{data}' using 't':'im':'sigma_im' with yerrorbars title 'Im L', \
             '{o}' using 't':'re' with lines dt 1 title 'Re L exact', '{o}' using 't':'im' with lines dt 2 title 'Im L exact'\n\
             set ylabel 'Γ'\n\
             plot '{data}' using 't':'rate' with points title 'Γ', '{o}' using 't':'rate' with lines title 'Γ exact'\n\
             unset multiplot\n"
        ),
        ExperimentKind::Necf => format!(
            "plot '{data}' using 't':'re' with points title 'Re g', '{data}' using 't':'im' with points title 'Im g', \
             '{o}' using 't':'re' with lines title 'Re g exact', '{o}' using 't':'im' with lines title 'Im g exact'\n"
        ),
        ExperimentKind::TopoIndex => format!(
            "set ylabel 'ν'\nplot '{data}' using 't':'nu_raw' with points title 'ν', '{o}' using 't':'nu' with steps title 'ν exact'\n"
        ),
        ExperimentKind::Tomography => format!(
            "set ylabel 'S2 [bits]'\n\
             plot '{data}' using 't':'s_mean':'sigma_s_mean' with yerrorbars title 'S2', \
             '{o}' using 't':'s_mean' with lines title 'S2 exact', '{data}' using 't':'fidelity' with points title 'F'\n"
        ),
        ExperimentKind::EhFit => format!(
            "set ylabel 'P_λ'\nset logscale y\n\
             plot for [k=5:*] '{data}' using 1:k with points notitle, for [k=5:*] '{o}' using 1:k with lines notitle\n"
        ),
        ExperimentKind::OverlapLoschmidt => format!(
            "set ylabel '|L|^2'\nplot '{data}' using 't':'l2':'sigma_l2' with yerrorbars title '|L|^2', '{o}' using 't':'l2' with lines title 'exact'\n"
        ),
        ExperimentKind::GateReport => format!(
            "set style data histograms\nset xtics rotate\nplot '{data}' using 'one_qubit':xtic(1) title '1q', '' using 'two_qubit' title '2q'\n"
        ),
    };
    s.push_str(&body);
    s
}
