import init, { outcome_table, entropy_curves, predictability_curves, simulate } from "./pkg/entswap_web.js";

const GRID = 401;
const LABELS = { "phi+": "Φ+", "phi-": "Φ−", "psi+": "Ψ+", "psi-": "Ψ−" };
const $ = (id) => document.getElementById(id);
const fmt = (x) => (x === null || x === undefined || Number.isNaN(x)) ? "n/a" : x.toFixed(4);

function plot(canvas, xs, series, marker) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, m = 36;
  ctx.clearRect(0, 0, W, H);
  const X = (x) => m + x * (W - 2 * m);
  const Y = (y) => H - m - y * (H - 2 * m);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(X(0), Y(0)); ctx.lineTo(X(1), Y(0));
  ctx.moveTo(X(0), Y(0)); ctx.lineTo(X(0), Y(1));
  ctx.stroke();
  for (let t = 0; t <= 1.0001; t += 0.25) {
    ctx.fillText(t.toFixed(2), X(t) - 10, H - m + 14);
    ctx.fillText(t.toFixed(2), 4, Y(t) + 4);
  }

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    let pen = false;
    xs.forEach((x, i) => {
      const y = s.ys[i];
      if (Number.isNaN(y)) { pen = false; return; }
      if (pen) ctx.lineTo(X(x), Y(y)); else ctx.moveTo(X(x), Y(y));
      pen = true;
    });
    ctx.stroke();
  }
  ctx.setLineDash([]);
  if (marker !== undefined) {
    ctx.strokeStyle = "#aaa";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(X(marker), Y(0)); ctx.lineTo(X(marker), Y(1));
    ctx.stroke();
  }
}

function params() {
  let p = parseFloat($("p").value);
  const q = parseFloat($("q").value);
  if ($("anti").checked) {
    p = Math.round((1 - q) * 100) / 100;
    $("p").value = p;
  }
  $("p-out").textContent = p.toFixed(2);
  $("q-out").textContent = q.toFixed(2);
  return { p, q };
}

function renderTable(p, q) {
  const t = JSON.parse(outcome_table(p, q));
  $("outcomes").querySelector("tbody").innerHTML = t.outcomes.map((o) => {
    const r = o.reduced_a;
    return `<tr><td>${LABELS[o.label]}</td><td>${fmt(o.probability)}</td>` +
      `<td>${fmt(r && r.s_vn)}</td><td>${fmt(r && r.p_vn)}</td><td>${fmt(r && r.c_re)}</td>` +
      `<td>${fmt(r && r.p_vn + r.s_vn)}</td></tr>`;
  }).join("");
  $("initial").textContent =
    `Before the measurement: S_vn(ρA) = ${fmt(t.initial_a.s_vn)}, P_vn(ρA) = ${fmt(t.initial_a.p_vn)}; ` +
    `S_vn(ρB) = ${fmt(t.initial_b.s_vn)}, P_vn(ρB) = ${fmt(t.initial_b.p_vn)}.`;
}

function renderFig1(p, q) {
  const c = entropy_curves(q, GRID);
  const xs = c.slice(0, GRID);
  plot($("fig1"), xs, [
    { ys: c.slice(GRID, 2 * GRID), color: "#1f77b4" },
    { ys: c.slice(2 * GRID, 3 * GRID), color: "#d62728" },
  ], p);
}

let fig2Data = null;
function renderFig2(q) {
  if (!fig2Data) fig2Data = predictability_curves(GRID);
  const s = (k) => fig2Data.slice(k * GRID, (k + 1) * GRID);
  const xs = s(0);
  let series, legend;
  if ($("fig2-mode").value === "prob") {
    series = [
      { ys: s(1), color: "#1f77b4", name: "Pr(Φ±)" },
      { ys: s(2), color: "#d62728", name: "Pr(Ψ±)" },
      { ys: s(3), color: "#2ca02c", name: "P_l(ρ_i)", dash: [6, 4] },
    ];
  } else {
    series = [
      { ys: s(4), color: "#1f77b4", name: "S_vn initial" },
      { ys: s(5), color: "#1f77b4", name: "S_vn final (ψ)", dash: [6, 4] },
      { ys: s(6), color: "#d62728", name: "P_vn initial" },
      { ys: s(7), color: "#d62728", name: "P_vn final (ψ)", dash: [6, 4] },
    ];
  }
  legend = series.map((x) => `<span style="color:${x.color}">${x.dash ? "- -" : "━"} ${x.name}</span>`).join("");
  $("fig2-legend").innerHTML = legend;
  plot($("fig2"), xs, series, q);
}

function runMonteCarlo() {
  const { p, q } = params();
  const shots = Math.max(1, parseInt($("shots").value, 10) || 1);
  const seed = Math.max(0, parseInt($("seed").value, 10) || 0) >>> 0;
  const r = JSON.parse(simulate(p, q, shots, seed));
  $("mc").querySelector("tbody").innerHTML = Object.keys(LABELS).map((l) => {
    const z = r.sigma[l] > 0 ? (r.frequency[l] - r.analytic[l]) / r.sigma[l] : 0;
    return `<tr><td>${LABELS[l]}</td><td>${r.counts[l]}</td><td>${fmt(r.frequency[l])}</td>` +
      `<td>${fmt(r.analytic[l])}</td><td>${z.toFixed(2)}</td></tr>`;
  }).join("");
}

function update() {
  const { p, q } = params();
  renderTable(p, q);
  renderFig1(p, q);
  renderFig2(q);
}

await init();
for (const id of ["p", "q", "anti", "fig2-mode"]) $(id).addEventListener("input", update);
$("run").addEventListener("click", runMonteCarlo);
update();
