int cwe401_ok_freed_on_both_arms_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    p[0] = 1;
    free(p);
  } else {
    free(p);
  }
  return 0;
}
