import init, { trig_sample, expsum_staircase, newton_ellipse } from "./pkg/realzeros_demo.js";

const $ = (id) => document.getElementById(id);

function show(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "out err" : "out";
}

function fmt(x) {
  return x === null || x === undefined ? "n/a" : Number(x).toFixed(6);
}

// Maps data coordinates to canvas pixels with a margin.
function frame(canvas, xmin, xmax, ymin, ymax, pad = 24) {
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  return {
    x: (v) => pad + ((v - xmin) / (xmax - xmin)) * w,
    y: (v) => canvas.height - pad - ((v - ymin) / (ymax - ymin)) * h,
  };
}

function polyline(ctx, pts, f, color, width = 1.5) {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  pts.forEach(([x, y], i) => (i ? ctx.lineTo(f.x(x), f.y(y)) : ctx.moveTo(f.x(x), f.y(y))));
  ctx.stroke();
}

function runTrig() {
  try {
    const r = JSON.parse(trig_sample($("trig-spectrum").value, Number($("trig-seed").value)));
    const c = $("trig-canvas");
    const ctx = c.getContext("2d");
    ctx.clearRect(0, 0, c.width, c.height);
    const m = Math.max(...r.values.map(Math.abs)) * 1.1;
    const f = frame(c, 0, 2 * Math.PI, -m, m);
    polyline(ctx, [[0, 0], [2 * Math.PI, 0]], f, "#999", 1);
    polyline(ctx, r.theta.map((t, i) => [t, r.values[i]]), f, "#1f5fa8");
    ctx.fillStyle = "#c0392b";
    for (const z of r.zeros) {
      ctx.beginPath();
      ctx.arc(f.x(z), f.y(0), 4, 0, 2 * Math.PI);
      ctx.fill();
    }
    show("trig-out",
      `zeros found      ${r.count}${r.certified ? "" : " (uncertified)"}\n` +
      `expected zeros   ${fmt(r.expected)}\n` +
      `probability      ${fmt(r.probability)}`);
  } catch (e) {
    show("trig-out", String(e), true);
  }
}

function runExpsum() {
  const out = "exp-out";
  show(out, "counting...");
  setTimeout(() => {
    try {
      const r = JSON.parse(expsum_staircase(
        $("exp-spectrum").value,
        Number($("exp-seed").value),
        Number($("exp-rmax").value),
        Number($("exp-steps").value)));
      const c = $("exp-canvas");
      const ctx = c.getContext("2d");
      ctx.clearRect(0, 0, c.width, c.height);
      const rmax = r.radii[r.radii.length - 1];
      const top = Math.max(r.counts[r.counts.length - 1], r.slope_perimeter * rmax) * 1.1 || 1;
      const f = frame(c, 0, rmax, 0, top);
      polyline(ctx, [[0, 0], [rmax, 0]], f, "#999", 1);
      const steps = [[0, 0]];
      r.radii.forEach((x, i) => {
        steps.push([x, steps[steps.length - 1][1]]);
        steps.push([x, r.counts[i]]);
      });
      polyline(ctx, steps, f, "#1f5fa8", 2);
      polyline(ctx, [[0, 0], [rmax, r.slope_perimeter * rmax]], f, "#27ae60");
      polyline(ctx, [[0, 0], [rmax, r.slope_semiperimeter * rmax]], f, "#e67e22");
      show(out,
        `N(${rmax})            ${r.counts[r.counts.length - 1]}\n` +
        `slope perimeter     ${fmt(r.slope_perimeter)}  (green)\n` +
        `slope semiperimeter ${fmt(r.slope_semiperimeter)}  (orange)`);
    } catch (e) {
      show(out, String(e), true);
    }
  }, 10);
}

function runNewton() {
  try {
    const r = JSON.parse(newton_ellipse($("nw-spectrum").value));
    const c = $("nw-canvas");
    const ctx = c.getContext("2d");
    ctx.clearRect(0, 0, c.width, c.height);
    const all = r.points.concat(r.ellipse);
    const m = Math.max(1, ...all.map(([x, y]) => Math.max(Math.abs(x), Math.abs(y)))) * 1.15;
    const f = frame(c, -m, m, -m, m);
    polyline(ctx, [[-m, 0], [m, 0]], f, "#ddd", 1);
    polyline(ctx, [[0, -m], [0, m]], f, "#ddd", 1);
    if (r.hull.length > 1) polyline(ctx, r.hull.concat([r.hull[0]]), f, "#555");
    polyline(ctx, r.ellipse, f, "#c0392b", 2);
    ctx.fillStyle = "#1f5fa8";
    for (const [x, y] of r.points) {
      ctx.beginPath();
      ctx.arc(f.x(x), f.y(y), 3.5, 0, 2 * Math.PI);
      ctx.fill();
    }
    show("nw-out",
      `ellipse area     ${fmt(r.ellipse_area)}\n` +
      `hull area        ${fmt(r.hull_area)}\n` +
      `expected zeros   ${fmt(r.expected)}\n` +
      `probability      ${fmt(r.probability)}`);
  } catch (e) {
    show("nw-out", String(e), true);
  }
}

await init();
$("trig-run").onclick = runTrig;
$("exp-run").onclick = runExpsum;
$("nw-run").onclick = runNewton;
runTrig();
runNewton();
