import init, { xtilde, dyck_svg, rank3 } from "./pkg/upcluster_web.js";

const $ = (id) => document.getElementById(id);

function show(el, f) {
  try {
    el.textContent = f();
    el.classList.remove("error");
  } catch (e) {
    el.textContent = String(e.message ?? e);
    el.classList.add("error");
  }
}

function drawDyck() {
  const out = $("dp-out");
  try {
    const n = (id) => Number($(id).value) >>> 0;
    out.innerHTML = dyck_svg(n("dp-a1"), n("dp-a2"), n("dp-s1"), n("dp-s2"));
  } catch (e) {
    out.innerHTML = "";
    out.textContent = String(e.message ?? e);
  }
}

await init();
$("xt-go").addEventListener("click", () => show($("xt-out"), () => xtilde($("xt-matrix").value, $("xt-a").value)));
$("r3-go").addEventListener("click", () => show($("r3-out"), () => rank3($("r3-triple").value)));
for (const id of ["dp-a1", "dp-a2", "dp-s1", "dp-s2"]) $(id).addEventListener("input", drawDyck);
drawDyck();
