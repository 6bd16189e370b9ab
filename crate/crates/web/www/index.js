import init, { reference_curve, kerr_path, driven_scan } from "./pkg/cavsq_web.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c"];
const DB_FLOOR = -40;
const DB_CEIL = 40;

// rows: flat array with `width` values per row; column 0 is x.
function plot(canvas, rows, width, columns, yLabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const n = rows.length / width;
  const xs = Array.from({ length: n }, (_, i) => rows[i * width]);
  const clamp = (v) => Math.min(DB_CEIL, Math.max(DB_FLOOR, v));
  let lo = Infinity, hi = -Infinity;
  for (const c of columns) {
    for (let i = 0; i < n; i++) {
      const v = clamp(rows[i * width + c]);
      if (Number.isFinite(v)) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
    }
  }
  if (hi - lo < 1e-9) { lo -= 1; hi += 1; }
  const x0 = xs[0], x1 = xs[n - 1];
  const px = (x) => pad + (x - x0) / (x1 - x0) * (w - 2 * pad);
  const py = (y) => h - pad - (y - lo) / (hi - lo) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad); ctx.lineTo(pad, h - pad); ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  if (lo < 0 && hi > 0) {
    ctx.setLineDash([4, 4]);
    ctx.beginPath(); ctx.moveTo(pad, py(0)); ctx.lineTo(w - pad, py(0)); ctx.stroke();
    ctx.setLineDash([]);
  }
  ctx.fillStyle = "#444";
  ctx.fillText(hi.toFixed(2), 2, pad);
  ctx.fillText(lo.toFixed(2), 2, h - pad);
  ctx.fillText(x0.toFixed(2), pad, h - pad + 15);
  ctx.fillText(x1.toFixed(2), w - pad - 20, h - pad + 15);
  ctx.fillText(yLabel, pad + 5, pad - 10);

  columns.forEach((c, k) => {
    ctx.strokeStyle = COLORS[k % COLORS.length];
    ctx.beginPath();
    let pen = false;
    for (let i = 0; i < n; i++) {
      const v = rows[i * width + c];
      if (!Number.isFinite(v)) { pen = false; continue; }
      const y = py(clamp(v));
      if (pen) ctx.lineTo(px(xs[i]), y); else ctx.moveTo(px(xs[i]), y);
      pen = true;
    }
    ctx.stroke();
  });
}

function bind(ids, draw) {
  const update = () => {
    for (const id of ids) {
      document.getElementById(`${id}-out`).textContent = document.getElementById(id).value;
    }
    draw(...ids.map((id) => parseFloat(document.getElementById(id).value)));
  };
  ids.forEach((id) => document.getElementById(id).addEventListener("input", update));
  update();
}

await init();

bind(["ref-b", "ref-d"], (b, d) => {
  plot(document.getElementById("ref-plot"), reference_curve(b, d, 5, 400), 3, [1, 2], "dB vs ω̃");
});

bind(["kerr-eta"], (eta) => {
  plot(document.getElementById("kerr-plot"), kerr_path(eta, Math.PI * 0.999, 400), 4, [1, 2], "dB vs m");
});

bind(["drv-f"], (f) => {
  const rows = driven_scan(f, 5, 201);
  // Show the power ratio on the same axis, in dB.
  const withPower = new Float64Array(rows.length);
  for (let i = 0; i < rows.length; i += 4) {
    withPower.set([rows[i], rows[i + 1], rows[i + 2], 10 * Math.log10(rows[i + 3])], i);
  }
  plot(document.getElementById("drv-plot"), withPower, 4, [1, 2, 3], "dB vs m");
});
