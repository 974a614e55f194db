// Built-in dashboard UI: cross-filtered charts over the embedded dataset.
(function () {
  'use strict';

  var root = document.getElementById('aldash-root');

  function el(tag, cls, text) {
    var e = document.createElement(tag);
    if (cls) e.className = cls;
    if (text !== undefined) e.textContent = text;
    return e;
  }

  function fail(message) {
    root.textContent = '';
    root.appendChild(el('div', 'aldash-error', 'Dashboard error: ' + message));
  }

  // RFC 4180 records; quoted fields may contain commas, quotes and newlines.
  function parseCsv(text) {
    var records = [], field = '', record = [], i = 0, quoted = false, n = text.length;
    while (i < n) {
      var c = text[i];
      if (quoted) {
        if (c === '"') {
          if (text[i + 1] === '"') { field += '"'; i += 2; continue; }
          quoted = false; i++; continue;
        }
        field += c; i++; continue;
      }
      if (c === '"') { quoted = true; i++; continue; }
      if (c === ',') { record.push(field); field = ''; i++; continue; }
      if (c === '\r' && text[i + 1] === '\n') i++;
      if (c === '\n' || c === '\r') { record.push(field); records.push(record); record = []; field = ''; i++; continue; }
      field += c; i++;
    }
    if (quoted) throw new Error('unterminated quoted field in dataset');
    if (field !== '' || record.length) { record.push(field); records.push(record); }
    return records;
  }

  function loadConfig() {
    var node = document.getElementById('aldash-config');
    if (!node) throw new Error('missing control configuration');
    return JSON.parse(node.textContent);
  }

  function loadRows(config) {
    var node = document.getElementById('aldash-data');
    if (!node) throw new Error('missing dataset');
    var records = parseCsv(node.textContent);
    if (!records.length || records[0].join(',') !== config.columns) throw new Error('unexpected dataset header');
    var cols = records[0], rows = [];
    for (var r = 1; r < records.length; r++) {
      var rec = records[r];
      if (rec.length === 1 && rec[0] === '') continue;
      if (rec.length !== cols.length) throw new Error('dataset record ' + r + ' has ' + rec.length + ' fields');
      var row = {};
      for (var c = 0; c < cols.length; c++) row[cols[c]] = rec[c];
      row.confidence = Number(row.confidence);
      if (!isFinite(row.confidence)) throw new Error('dataset record ' + r + ' has a bad confidence');
      row.residual = row.residual === 'true' ? 'residual' : 'non-residual';
      rows.push(row);
    }
    return rows;
  }

  // ---- filter state -------------------------------------------------------

  var DIMENSIONS = ['track', 'testcase', 'matcher', 'relation', 'outcome', 'left_type', 'right_type', 'residual'];

  function Filters() {
    this.sets = {};
    for (var i = 0; i < DIMENSIONS.length; i++) this.sets[DIMENSIONS[i]] = new Set();
    this.range = null;  // [lo, hi) on confidence, hi inclusive at 1
  }

  Filters.prototype.toggle = function (dim, value) {
    var s = this.sets[dim];
    if (s.has(value)) s.delete(value); else s.add(value);
  };

  Filters.prototype.active = function () {
    if (this.range) return true;
    for (var d in this.sets) if (this.sets[d].size) return true;
    return false;
  };

  // Rows passing every filter except the one on `skip`.
  Filters.prototype.apply = function (rows, skip) {
    var sets = this.sets, range = this.range, dims = DIMENSIONS.filter(function (d) { return d !== skip && sets[d].size; });
    return rows.filter(function (row) {
      for (var i = 0; i < dims.length; i++) if (!sets[dims[i]].has(row[dims[i]])) return false;
      if (range && skip !== 'confidence') {
        var c = row.confidence;
        if (c < range[0] || (c >= range[1] && !(range[1] >= 1 && c <= 1))) return false;
      }
      return true;
    });
  };

  // ---- metrics ------------------------------------------------------------

  function counts(rows) {
    var k = { TP: 0, FP: 0, FN: 0 };
    for (var i = 0; i < rows.length; i++) k[rows[i].outcome]++;
    return k;
  }

  function prf(k) {
    var p = k.TP + k.FP === 0 ? (k.FN === 0 ? 1 : 0) : k.TP / (k.TP + k.FP);
    var r = k.TP + k.FN === 0 ? (k.FP === 0 ? 1 : 0) : k.TP / (k.TP + k.FN);
    return { p: p, r: r, f: p + r === 0 ? 0 : 2 * p * r / (p + r) };
  }

  function groupBy(rows, key) {
    var m = new Map();
    for (var i = 0; i < rows.length; i++) {
      var v = key(rows[i]);
      if (!m.has(v)) m.set(v, []);
      m.get(v).push(rows[i]);
    }
    return m;
  }

  function fmt(x) { return x.toFixed(3); }

  // ---- widgets ------------------------------------------------------------

  function panel(title, wide) {
    var p = el('section', 'aldash-panel' + (wide ? ' aldash-wide' : ''));
    p.appendChild(el('h2', null, title));
    return p;
  }

  function barChart(ctx, title, dim) {
    var p = panel(title);
    var rows = ctx.filters.apply(ctx.rows, dim);
    var groups = groupBy(rows, function (r) { return r[dim]; });
    var values = ctx.domains[dim];
    var max = 1;
    values.forEach(function (v) { max = Math.max(max, (groups.get(v) || []).length); });
    var sel = ctx.filters.sets[dim];
    values.forEach(function (v) {
      var n = (groups.get(v) || []).length;
      var line = el('div', 'aldash-bar' + (sel.size && !sel.has(v) ? ' aldash-dim' : '') + (sel.has(v) ? ' aldash-on' : ''));
      line.title = v + ': ' + n;
      line.appendChild(el('span', 'aldash-label', v));
      var track = el('span', 'aldash-track');
      var fill = el('span', 'aldash-fill');
      fill.style.width = (100 * n / max) + '%';
      if (ctx.config.colors[v]) fill.style.background = ctx.config.colors[v];
      track.appendChild(fill);
      line.appendChild(track);
      line.appendChild(el('span', 'aldash-count', String(n)));
      line.addEventListener('click', function () { ctx.filters.toggle(dim, v); ctx.redraw(); });
      p.appendChild(line);
    });
    return p;
  }

  function selector(ctx, title, dim) {
    var p = panel(title);
    var rows = ctx.filters.apply(ctx.rows, dim);
    var groups = groupBy(rows, function (r) { return r[dim]; });
    var list = el('div', 'aldash-chips');
    ctx.domains[dim].forEach(function (v) {
      var chip = el('button', 'aldash-chip' + (ctx.filters.sets[dim].has(v) ? ' aldash-on' : ''),
        v + ' (' + (groups.get(v) || []).length + ')');
      chip.type = 'button';
      chip.addEventListener('click', function () { ctx.filters.toggle(dim, v); ctx.redraw(); });
      list.appendChild(chip);
    });
    p.appendChild(list);
    return p;
  }

  function histogram(ctx) {
    var p = panel('Confidence');
    var width = ctx.config.confidenceBinWidth;
    var bins = Math.max(1, Math.ceil(1 / width - 1e-9));
    var hist = new Array(bins).fill(0);
    ctx.filters.apply(ctx.rows, 'confidence').forEach(function (r) {
      var b = Math.min(bins - 1, Math.max(0, Math.floor(r.confidence / width + 1e-9)));
      hist[b]++;
    });
    var max = Math.max.apply(null, hist.concat([1]));
    var area = el('div', 'aldash-hist');
    var range = ctx.filters.range;
    var start = null;
    for (var b = 0; b < bins; b++) {
      var col = el('div', 'aldash-col');
      var lo = b * width, hi = Math.min(1, (b + 1) * width);
      if (range && (hi <= range[0] || lo >= range[1])) col.className += ' aldash-dim';
      col.title = '[' + fmt(lo) + ', ' + fmt(hi) + '): ' + hist[b];
      var fill = el('div', 'aldash-colfill');
      fill.style.height = (100 * hist[b] / max) + '%';
      col.appendChild(fill);
      col.dataset.bin = String(b);
      area.appendChild(col);
    }
    // Brush: drag across bins to select a confidence interval; click clears.
    function binAt(ev) {
      var t = ev.target.closest ? ev.target.closest('.aldash-col') : null;
      return t ? Number(t.dataset.bin) : null;
    }
    area.addEventListener('mousedown', function (ev) { start = binAt(ev); ev.preventDefault(); });
    area.addEventListener('mouseup', function (ev) {
      var end = binAt(ev);
      if (start === null || end === null) { start = null; return; }
      var a = Math.min(start, end), z = Math.max(start, end);
      var next = [a * width, Math.min(1, (z + 1) * width)];
      var same = ctx.filters.range && ctx.filters.range[0] === next[0] && ctx.filters.range[1] === next[1];
      ctx.filters.range = same ? null : next;
      start = null;
      ctx.redraw();
    });
    p.appendChild(area);
    var axis = el('div', 'aldash-axis');
    axis.appendChild(el('span', null, '0'));
    axis.appendChild(el('span', null, range ? 'selected ' + fmt(range[0]) + ' to ' + fmt(range[1]) : 'drag to select'));
    axis.appendChild(el('span', null, '1'));
    p.appendChild(axis);
    return p;
  }

  function stack(ctx, title, dim) {
    var p = panel(title);
    var rows = ctx.filters.apply(ctx.rows, dim);
    var groups = groupBy(rows, function (r) { return r[dim]; });
    var max = 1;
    groups.forEach(function (g) { max = Math.max(max, g.length); });
    ctx.domains[dim].forEach(function (v) {
      var g = groups.get(v) || [];
      var k = counts(g);
      var line = el('div', 'aldash-bar' + (ctx.filters.sets[dim].has(v) ? ' aldash-on' : ''));
      line.title = v + ': TP ' + k.TP + ', FP ' + k.FP + ', FN ' + k.FN;
      line.appendChild(el('span', 'aldash-label', v));
      var track = el('span', 'aldash-track');
      ['TP', 'FP', 'FN'].forEach(function (o) {
        var seg = el('span', 'aldash-seg');
        seg.style.width = (100 * k[o] / max) + '%';
        seg.style.background = ctx.config.colors[o];
        track.appendChild(seg);
      });
      line.appendChild(track);
      line.appendChild(el('span', 'aldash-count', String(g.length)));
      line.addEventListener('click', function () { ctx.filters.toggle(dim, v); ctx.redraw(); });
      p.appendChild(line);
    });
    return p;
  }

  function metricTable(ctx) {
    var p = panel('Metrics', true);
    var rows = ctx.filters.apply(ctx.rows, null);
    var table = el('table', 'aldash-table');
    var head = el('tr');
    ['Matcher', 'TP', 'FP', 'FN', 'Micro P', 'Micro R', 'Micro F1', 'Macro P', 'Macro R', 'Macro F1', 'Residual R']
      .forEach(function (h) { head.appendChild(el('th', null, h)); });
    table.appendChild(head);
    var byMatcher = groupBy(rows, function (r) { return r.matcher; });
    ctx.domains.matcher.forEach(function (m) {
      var g = byMatcher.get(m);
      if (!g) return;
      var k = counts(g), micro = prf(k);
      // Macro averages over test cases that still have visible rows.
      var cases = groupBy(g, function (r) { return r.track + '\u0000' + r.testcase; });
      var sp = 0, sr = 0;
      cases.forEach(function (c) { var x = prf(counts(c)); sp += x.p; sr += x.r; });
      var mp = sp / cases.size, mr = sr / cases.size, mf = mp + mr === 0 ? 0 : 2 * mp * mr / (mp + mr);
      var res = g.filter(function (r) { return r.residual === 'residual'; }), rk = counts(res);
      var rr = rk.TP + rk.FN === 0 ? '' : fmt(rk.TP / (rk.TP + rk.FN));
      var tr = el('tr');
      [m, k.TP, k.FP, k.FN, fmt(micro.p), fmt(micro.r), fmt(micro.f), fmt(mp), fmt(mr), fmt(mf), rr]
        .forEach(function (v) { tr.appendChild(el('td', null, String(v))); });
      table.appendChild(tr);
    });
    p.appendChild(table);
    return p;
  }

  function correspondenceTable(ctx) {
    var p = panel('Correspondences', true);
    var rows = ctx.filters.apply(ctx.rows, null);
    var size = ctx.config.pageSize || 15;
    var pages = Math.max(1, Math.ceil(rows.length / size));
    ctx.page = Math.min(ctx.page, pages - 1);
    var table = el('table', 'aldash-table');
    var head = el('tr');
    ['Track', 'Test case', 'Matcher', 'Source', 'Relation', 'Target', 'Confidence', 'Outcome', 'Left type', 'Right type', 'Residual']
      .forEach(function (h) { head.appendChild(el('th', null, h)); });
    table.appendChild(head);
    rows.slice(ctx.page * size, (ctx.page + 1) * size).forEach(function (r) {
      var tr = el('tr');
      [r.track, r.testcase, r.matcher, r.source, r.relation, r.target, r.confidence.toFixed(3), r.outcome,
        r.left_type, r.right_type, r.residual === 'residual' ? 'yes' : 'no'].forEach(function (v, i) {
        var td = el('td', i === 3 || i === 5 ? 'aldash-uri' : null, v);
        if (i === 7) { td.style.color = ctx.config.colors[v]; td.style.fontWeight = 'bold'; }
        tr.appendChild(td);
      });
      table.appendChild(tr);
    });
    p.appendChild(table);
    var nav = el('div', 'aldash-pager');
    var prev = el('button', null, 'Previous'), next = el('button', null, 'Next');
    prev.type = next.type = 'button';
    prev.disabled = ctx.page === 0;
    next.disabled = ctx.page >= pages - 1;
    prev.addEventListener('click', function () { ctx.page--; ctx.redraw(); });
    next.addEventListener('click', function () { ctx.page++; ctx.redraw(); });
    nav.appendChild(prev);
    nav.appendChild(el('span', null, 'Page ' + (ctx.page + 1) + ' of ' + pages + ' (' + rows.length + ' rows)'));
    nav.appendChild(next);
    p.appendChild(nav);
    return p;
  }

  var RENDERERS = {
    TrackSelector: function (ctx) { return selector(ctx, 'Tracks', 'track'); },
    TestCaseSelector: function (ctx) { return selector(ctx, 'Test cases', 'testcase'); },
    ConfidenceHistogram: histogram,
    RelationChart: function (ctx) { return barChart(ctx, 'Relation', 'relation'); },
    MatcherChart: function (ctx) { return barChart(ctx, 'Matcher', 'matcher'); },
    OutcomeChart: function (ctx) { return barChart(ctx, 'Outcome', 'outcome'); },
    LeftTypeChart: function (ctx) { return barChart(ctx, 'Left entity type', 'left_type'); },
    RightTypeChart: function (ctx) { return barChart(ctx, 'Right entity type', 'right_type'); },
    ResidualChart: function (ctx) { return barChart(ctx, 'Residual', 'residual'); },
    PerTestCaseStack: function (ctx) { return stack(ctx, 'Outcomes per test case', 'testcase'); },
    PerMatcherStack: function (ctx) { return stack(ctx, 'Outcomes per matcher', 'matcher'); },
    MetricTable: metricTable,
    CorrespondenceTable: correspondenceTable,
  };

  function main() {
    var config = loadConfig();
    var rows = loadRows(config);
    var domains = {};
    DIMENSIONS.forEach(function (d) {
      var s = new Set(rows.map(function (r) { return r[d]; }));
      domains[d] = Array.from(s).sort();
    });
    domains.outcome = ['TP', 'FP', 'FN'].filter(function (o) { return domains.outcome.indexOf(o) >= 0; });

    var ctx = { config: config, rows: rows, domains: domains, filters: new Filters(), page: 0 };
    document.title = config.title;

    ctx.redraw = function () {
      root.textContent = '';
      var header = el('header', 'aldash-header');
      header.appendChild(el('h1', null, config.title));
      var visible = ctx.filters.apply(rows, null).length;
      header.appendChild(el('span', 'aldash-status', visible + ' of ' + rows.length + ' correspondences'));
      var reset = el('button', null, 'Reset filters');
      reset.type = 'button';
      reset.disabled = !ctx.filters.active();
      reset.addEventListener('click', function () { ctx.filters = new Filters(); ctx.page = 0; ctx.redraw(); });
      header.appendChild(reset);
      root.appendChild(header);
      var grid = el('div', 'aldash-grid');
      config.controls.forEach(function (kind) {
        var render = RENDERERS[kind];
        if (render) grid.appendChild(render(ctx));
      });
      root.appendChild(grid);
    };
    ctx.redraw();
  }

  try {
    main();
  } catch (e) {
    fail(e && e.message ? e.message : String(e));
  }
})();
