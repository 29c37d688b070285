import gmpy2, sympy, time, json
A,B,C = 32, 39721664, 182215381147285848449
g = 593856338459898
print("g factors", sympy.factorint(g))
print("check", 32*620651**2 + 182215368820640606817 == C, 64*620651 == B)
t=time.time()
run=[]; fail=None; nprime=0
for X in range(0, 1_300_000):
    p = A*X*X+B*X+C
    if not gmpy2.is_prime(p, 30): continue
    nprime += 1
    if g % p == 0: continue
    gm = g % p
    ok = all(pow(gm, (p-1)//q, p) != 1 for q in sympy.factorint(p-1))
    if not ok:
        fail=(X,p); break
    run.append(X)
print("time", time.time()-t)
out = dict(c=len(run), first=run[0], last=run[-1], fail=fail, nprime=nprime, first_n=run[0]+620651, last_n=run[-1]+620651,
   count_first_100k=sum(1 for x in run if x < 100000))
print(out)
json.dump(out, open("record.json","w"))
