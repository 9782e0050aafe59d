(>= (f (var x)) (* (var x) (var x)))
