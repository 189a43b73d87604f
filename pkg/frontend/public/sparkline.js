// Cumulative-cost sparkline.  The values plotted are exactly the service
// report's netSeries; this module only scales them to pixels.
export function sparkPoints(values, width, height) {
    if (values.length === 0)
        return [];
    let lo = Math.min(0, ...values);
    let hi = Math.max(0, ...values);
    if (hi === lo) {
        hi += 1;
        lo -= 1;
    }
    const dx = values.length > 1 ? width / (values.length - 1) : 0;
    return values.map((v, i) => ({
        x: i * dx,
        y: height - ((v - lo) / (hi - lo)) * height,
    }));
}
export function zeroLineY(values, height) {
    let lo = Math.min(0, ...values);
    let hi = Math.max(0, ...values);
    if (hi === lo) {
        hi += 1;
        lo -= 1;
    }
    return height - ((0 - lo) / (hi - lo)) * height;
}
export function drawSparkline(canvas, values) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        return;
    const { width, height } = canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.strokeStyle = "#555";
    ctx.setLineDash([3, 3]);
    const zy = zeroLineY(values, height - 8) + 4;
    ctx.beginPath();
    ctx.moveTo(0, zy);
    ctx.lineTo(width, zy);
    ctx.stroke();
    ctx.setLineDash([]);
    const pts = sparkPoints(values, width, height - 8);
    if (!pts.length)
        return;
    ctx.strokeStyle = "#4fc3f7";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.moveTo(pts[0].x, pts[0].y + 4);
    for (const p of pts)
        ctx.lineTo(p.x, p.y + 4);
    ctx.stroke();
}
