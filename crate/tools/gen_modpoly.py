from fractions import Fraction as Fr
from math import gcd
import sys
def sigma(n,k): return sum(d**k for d in range(1,n+1) if n%d==0)
def jseries(P):
    # coefficients of q^{n} for n=-1..P-2 as list index n+1
    E4=[1]+[240*sigma(n,3) for n in range(1,P+1)]
    # Delta/q = prod (1-q^n)^24
    D=[0]*(P+1); D[0]=1
    for n in range(1,P+1):
        for _ in range(24):
            for i in range(P,n-1,-1): D[i]-=D[i-n]
    def mul(a,b):
        c=[0]*(P+1)
        for i,x in enumerate(a):
            if x:
                for j in range(P+1-i): c[i+j]+=x*b[j]
        return c
    E43=mul(mul(E4,E4),E4)
    inv=[0]*(P+1); inv[0]=1
    for n in range(1,P+1): inv[n]=-sum(D[k]*inv[n-k] for k in range(1,n+1))
    return mul(E43,inv)  # j*q
def mobius(n):
    r=1;m=n;p=2
    while p*p<=m:
        if m%p==0:
            m//=p
            if m%p==0: return 0
            r=-r
        p+=1
    if m>1: r=-r
    return r
def weight(a,d,n):
    g=gcd(a,d); s=0
    for e in range(1,g+1):
        if g%e==0:
            dd=d//e
            if n%dd==0: s+=mobius(e)*dd
    return s
def polymul(a,b):
    c=[Fr(0)]*(len(a)+len(b)-1)
    for i,x in enumerate(a):
        if x:
            for j,y in enumerate(b): c[i+j]+=x*y
    return c
def modpoly(N):
    mats=[(a,N//a) for a in range(1,N+1) if N%a==0]
    psi=sum(1 for a,d in mats for b in range(d) if gcd(gcd(a,b),d)==1)
    maxdeg=psi*N
    jq=jseries(maxdeg+2)  # j*q coefficients
    # powers of j: j^m = q^{-m} (jq)^m ; need coefficients of q^{-m..0}
    def jpow_coeffs(m):
        # returns list c[i] = coeff of q^{i-m}, i=0..m
        r=[1]+[0]*m
        for _ in range(m):
            r=[sum(r[k]*jq[i-k] for k in range(i+1)) for i in range(m+1)]
        return r
    jp=[None]+[jpow_coeffs(m) for m in range(1,maxdeg+1)]
    def to_poly_in_j(principal):
        # principal: dict exponent(<=0)->coeff ; returns poly coeffs in j
        D=max([-e for e,c in principal.items() if c!=0]+[0])
        pr=dict(principal); poly=[Fr(0)]*(D+1)
        for m in range(D,0,-1):
            c=pr.get(-m,0)
            if c:
                poly[m]=Fr(c)
                for i,x in enumerate(jp[m]):
                    e=i-m
                    pr[e]=pr.get(e,0)-c*x
        poly[0]=Fr(pr.get(0,0))
        return poly
    s=[None]
    for k in range(1,psi+1):
        jk=jp[k]  # coeffs of q^{n}, n=-k..0
        princ={}
        for a,d in mats:
            for i,c in enumerate(jk):
                n=i-k
                w=weight(a,d,n)
                if w and c:
                    ex=a*a*n  # in units q^{1/N}
                    if ex>0: continue
                    princ[ex]=princ.get(ex,0)+c*w
        # also need terms with exponent<=0 from higher n? for a=1, n>0 gives ex>0. ok
        pq={}
        for ex,c in princ.items():
            assert ex%N==0 or c==0,(k,ex,c)
            if c: pq[ex//N]=c
        s.append(to_poly_in_j(pq))
    e=[[Fr(1)]]
    for k in range(1,psi+1):
        acc=[Fr(0)]
        for i in range(1,k+1):
            term=polymul(e[k-i],s[i])
            sign=1 if i%2==1 else -1
            if len(term)>len(acc): acc+= [Fr(0)]*(len(term)-len(acc))
            for t_,x in enumerate(term): acc[t_]+=sign*x
        e.append([x/k for x in acc])
    terms={}
    for k in range(psi+1):
        sign=(-1)**k
        for jdeg,c in enumerate(e[k]):
            if c:
                assert c.denominator==1
                terms[(psi-k,jdeg)]=sign*int(c)
    return psi,terms
if __name__=='__main__':
    # usage: gen_modpoly.py OUTDIR N [N ...]
    # writes OUTDIR/phi_N.txt; symmetric polynomials list each pair once after a `sym` line
    out=sys.argv[1]
    for N in map(int,sys.argv[2:]):
        psi,terms=modpoly(N)
        sym=N>1 and all(terms.get((j,i))==c for (i,j),c in terms.items())
        print(N,psi,len(terms),'sym',sym, file=sys.stderr)
        with open(f'{out}/phi_{N}.txt','w') as f:
            f.write(f'{N}\n')
            if sym:
                f.write('sym\n')
            for (i,j),c in sorted(terms.items()):
                if sym and i>j:
                    continue
                f.write(f'{i} {j} {c}\n')
